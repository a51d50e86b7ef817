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

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "loqs/fock.hpp"
#include "loqs/interferometer.hpp"
#include "loqs/matrix.hpp"
#include "loqs/qml.hpp"
#include "loqs/strong_sim.hpp"

namespace loqs {

using Json = nlohmann::ordered_json;

Json to_json(const FockState& s);
FockState fock_from_json(const Json& j);

/// {"rows","cols","re","im"}, row-major.
Json to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);

/// {"m","k","n","u0","stages":[{"prefix","matrix"}]}. Stages equal to the
/// identity are omitted; absent prefixes read back as identity.
Json to_json(const AdaptiveInterferometer& a);
AdaptiveInterferometer adaptive_from_json(const Json& j);

Json to_json(const OutputDistribution& d);
OutputDistribution distribution_from_json(const Json& j);

Json to_json(const GramMatrix& g);
GramMatrix gram_from_json(const Json& j);

/// {"alphas","bias","lambda","labels"}.
Json to_json(const SvmModel& m);
SvmModel model_from_json(const Json& j);

/// Rows x_1..x_d,label. Blank lines and lines starting with '#' are skipped;
/// a header row is accepted if its last field is "label".
Dataset parse_dataset_csv(std::istream& in, std::string name = "");
Dataset read_dataset_csv(const std::string& path);
void write_dataset_csv(std::ostream& out, const Dataset& data);

/// Parses text, throwing InputError with the parser's position on failure.
Json parse_json(std::string_view text, std::string_view source = "input");
Json read_json_file(const std::string& path);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace loqs
