// Copyright 2026 The loqs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace loqs {

// Invalid arguments or malformed input data.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Instance too large for the requested exact computation, or an integer
// quantity that does not fit the representable range.
class CapacityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A post-selected adaptive outcome was not observed within the attempt budget.
class StarvationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An iterative solver hit its iteration cap before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

// Normalisation by an adaptive outcome that has probability zero.
class UnreachableOutcomeError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Internal consistency check failed (e.g. an exact probability outside [0, 1]).
class NumericalError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace loqs
