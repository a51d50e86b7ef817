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

#include "loqs/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "loqs/error.hpp"

namespace loqs {

namespace {

const Json& field(const Json& j, const char* key, std::string_view what) {
    if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string(what) + ": missing field \"" + key + "\"");
    return *it;
}

int int_field(const Json& j, const char* key, std::string_view what) {
    const Json& v = field(j, key, what);
    if (!v.is_number_integer()) throw InputError(std::string(what) + ": field \"" + key + "\" must be an integer");
    return v.get<int>();
}

double number(const Json& v, std::string_view what) {
    if (!v.is_number()) throw InputError(std::string(what) + ": expected a number");
    return v.get<double>();
}

std::vector<double> number_array(const Json& v, std::string_view what) {
    if (!v.is_array()) throw InputError(std::string(what) + ": expected an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(number(e, what));
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Json to_json(const FockState& s) {
    Json j = Json::array();
    for (int v : s) j.push_back(v);
    return j;
}

FockState fock_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("Fock state: expected an array of integers");
    std::vector<int> occ;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw InputError("Fock state: entries must be integers");
        occ.push_back(e.get<int>());
    }
    return FockState(std::move(occ));
}

Json to_json(const ComplexMatrix& a) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            re.push_back(a(r, c).real());
            im.push_back(a(r, c).imag());
        }
    }
    return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const int rows = int_field(j, "rows", "matrix");
    const int cols = int_field(j, "cols", "matrix");
    if (rows < 0 || cols < 0) throw InputError("matrix: negative dimension");
    const auto re = number_array(field(j, "re", "matrix"), "matrix.re");
    const auto im = number_array(field(j, "im", "matrix"), "matrix.im");
    const auto size = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    if (re.size() != size || im.size() != size) {
        throw InputError("matrix: expected " + std::to_string(size) + " entries in re and im, got " +
                         std::to_string(re.size()) + " and " + std::to_string(im.size()));
    }
    ComplexMatrix a(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const auto idx = static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c);
            a(r, c) = Complex(re[idx], im[idx]);
        }
    }
    return a;
}

Json to_json(const AdaptiveInterferometer& a) {
    Json stages = Json::array();
    for (const auto& [prefix, m] : a.tabulate()) {
        stages.push_back(Json{{"prefix", to_json(prefix)}, {"matrix", to_json(m)}});
    }
    return Json{{"m", a.modes()},
                {"k", a.adaptive_modes()},
                {"n", a.photons()},
                {"u0", to_json(a.base().matrix())},
                {"stages", std::move(stages)}};
}

AdaptiveInterferometer adaptive_from_json(const Json& j) {
    const int m = int_field(j, "m", "interferometer");
    const int k = j.contains("k") ? int_field(j, "k", "interferometer") : 0;
    const int n = int_field(j, "n", "interferometer");
    ComplexMatrix u0 = matrix_from_json(field(j, "u0", "interferometer"));
    if (u0.rows() != m || u0.cols() != m) {
        throw InputError("interferometer: u0 is " + std::to_string(u0.rows()) + "x" + std::to_string(u0.cols()) +
                         ", expected " + std::to_string(m) + "x" + std::to_string(m));
    }
    Interferometer base(std::move(u0));
    if (k == 0) {
        if (j.contains("stages") && !j["stages"].empty()) {
            throw InputError("interferometer: stages given but k = 0");
        }
        return AdaptiveInterferometer(std::move(base), n);
    }
    AdaptiveInterferometer::StageTable table;
    if (j.contains("stages")) {
        const Json& stages = j["stages"];
        if (!stages.is_array()) throw InputError("interferometer: \"stages\" must be an array");
        for (std::size_t i = 0; i < stages.size(); ++i) {
            const std::string what = "interferometer.stages[" + std::to_string(i) + "]";
            FockState prefix = fock_from_json(field(stages[i], "prefix", what));
            ComplexMatrix mat = matrix_from_json(field(stages[i], "matrix", what));
            if (!table.emplace(std::move(prefix), std::move(mat)).second) {
                throw InputError(what + ": duplicate prefix");
            }
        }
    }
    return AdaptiveInterferometer(std::move(base), k, n, std::move(table));
}

Json to_json(const OutputDistribution& d) {
    Json entries = Json::array();
    for (const auto& [s, p] : d.entries) entries.push_back(Json{{"state", to_json(s)}, {"prob", p}});
    return Json{{"context", Json{{"kind", d.kind}, {"m", d.modes}, {"n", d.photons}, {"k", d.adaptive_modes}}},
                {"entries", std::move(entries)}};
}

OutputDistribution distribution_from_json(const Json& j) {
    OutputDistribution d;
    const Json& ctx = field(j, "context", "distribution");
    const Json& kind = field(ctx, "kind", "distribution.context");
    if (!kind.is_string()) throw InputError("distribution.context: \"kind\" must be a string");
    d.kind = kind.get<std::string>();
    d.modes = int_field(ctx, "m", "distribution.context");
    d.photons = int_field(ctx, "n", "distribution.context");
    d.adaptive_modes = int_field(ctx, "k", "distribution.context");
    const Json& entries = field(j, "entries", "distribution");
    if (!entries.is_array()) throw InputError("distribution: \"entries\" must be an array");
    for (const auto& e : entries) {
        d.entries.emplace_back(fock_from_json(field(e, "state", "distribution entry")),
                               number(field(e, "prob", "distribution entry"), "distribution entry prob"));
    }
    return d;
}

Json to_json(const GramMatrix& g) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < g.entries.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < g.entries.cols(); ++c) row.push_back(g.entries(r, c));
        rows.push_back(std::move(row));
    }
    Json j{{"n", g.entries.rows()}, {"entries", std::move(rows)}, {"provenance", g.provenance}};
    if (g.provenance == "estimated") j["shots"] = g.shots;
    return j;
}

GramMatrix gram_from_json(const Json& j) {
    const int n = int_field(j, "n", "gram");
    const Json& rows = field(j, "entries", "gram");
    if (n < 0 || !rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
        throw InputError("gram: \"entries\" must hold n rows");
    }
    GramMatrix g;
    g.entries = RealMatrix(n, n);
    for (int r = 0; r < n; ++r) {
        const auto row = number_array(rows[static_cast<std::size_t>(r)], "gram.entries");
        if (row.size() != static_cast<std::size_t>(n)) {
            throw InputError("gram: row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(n));
        }
        for (int c = 0; c < n; ++c) g.entries(r, c) = row[static_cast<std::size_t>(c)];
    }
    if (j.contains("provenance")) {
        if (!j["provenance"].is_string()) throw InputError("gram: \"provenance\" must be a string");
        g.provenance = j["provenance"].get<std::string>();
    }
    if (j.contains("shots")) {
        if (!j["shots"].is_number_unsigned()) throw InputError("gram: \"shots\" must be a non-negative integer");
        g.shots = j["shots"].get<std::uint64_t>();
    }
    if (!g.entries.allFinite()) throw InputError("gram: entries must be finite");
    return g;
}

Json to_json(const SvmModel& m) {
    return Json{{"alphas", m.alphas}, {"bias", m.bias}, {"lambda", m.lambda}, {"labels", m.labels}};
}

SvmModel model_from_json(const Json& j) {
    SvmModel m;
    m.alphas = number_array(field(j, "alphas", "model"), "model.alphas");
    m.bias = number(field(j, "bias", "model"), "model.bias");
    m.lambda = number(field(j, "lambda", "model"), "model.lambda");
    const Json& labels = field(j, "labels", "model");
    if (!labels.is_array()) throw InputError("model: \"labels\" must be an array");
    for (const auto& y : labels) {
        if (!y.is_number_integer() || (y.get<int>() != 1 && y.get<int>() != -1)) {
            throw InputError("model: labels must be -1 or +1");
        }
        m.labels.push_back(y.get<int>());
    }
    if (m.labels.size() != m.alphas.size()) throw InputError("model: alphas and labels differ in length");
    return m;
}

Dataset parse_dataset_csv(std::istream& in, std::string name) {
    Dataset data;
    data.name = std::move(name);
    std::string line;
    std::size_t line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(t);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(trim(f));
        if (t.back() == ',') fields.emplace_back();
        if (data.points.empty() && width == 0 && !fields.empty() && fields.back() == "label") {
            width = fields.size();
            continue;
        }
        if (fields.size() < 1) throw InputError("csv line " + std::to_string(line_no) + ": no fields");
        if (width == 0) width = fields.size();
        if (fields.size() != width) {
            throw InputError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                             " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> x;
        for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
            double v = 0.0;
            const auto& s = fields[i];
            auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
                throw InputError("csv line " + std::to_string(line_no) + ", field " + std::to_string(i + 1) +
                                 ": \"" + s + "\" is not a finite number");
            }
            x.push_back(v);
        }
        const auto& ls = fields.back();
        int y = 0;
        auto res = std::from_chars(ls.data(), ls.data() + ls.size(), y);
        if (ls.empty() || res.ec != std::errc() || res.ptr != ls.data() + ls.size() || (y != 1 && y != -1)) {
            throw InputError("csv line " + std::to_string(line_no) + ", field " + std::to_string(fields.size()) +
                             ": label \"" + ls + "\" must be -1 or +1");
        }
        data.points.push_back(std::move(x));
        data.labels.push_back(y);
    }
    if (data.points.empty()) throw InputError("csv " + (name.empty() ? std::string("input") : name) + ": no data rows");
    return data;
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open dataset file \"" + path + "\"");
    return parse_dataset_csv(in, path);
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t l = 0; l < data.size(); ++l) {
        for (double v : data.points[l]) out << format_double(v) << ',';
        out << data.labels[l] << '\n';
    }
}

Json parse_json(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string(source) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file \"" + path + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

}  // namespace loqs
