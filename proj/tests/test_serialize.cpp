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

#include <doctest.h>

#include <sstream>

#include "loqs/error.hpp"
#include "loqs/serialize.hpp"
#include "support.hpp"

using namespace loqs;

namespace {

Json round_trip_text(const Json& j) { return parse_json(j.dump()); }

}  // namespace

TEST_CASE("fock states and matrices round-trip") {
    const FockState s{2, 0, 1};
    CHECK(fock_from_json(round_trip_text(to_json(s))) == s);
    CHECK_THROWS_AS(fock_from_json(Json::parse("[1,-1]")), InputError);
    CHECK_THROWS_AS(fock_from_json(Json::parse("[1,\"a\"]")), InputError);

    const ComplexMatrix a = test::random_gaussian(3, 4, 12);
    const ComplexMatrix b = matrix_from_json(round_trip_text(to_json(a)));
    CHECK(b == a);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"rows":2,"cols":2,"re":[1,2,3],"im":[0,0,0,0]})")),
                    InputError);
}

TEST_CASE("adaptive interferometers round-trip") {
    const AdaptiveInterferometer a = random_adaptive(5, 2, 3, 44);
    const AdaptiveInterferometer b = adaptive_from_json(round_trip_text(to_json(a)));
    CHECK(b.modes() == 5);
    CHECK(b.adaptive_modes() == 2);
    CHECK(b.photons() == 3);
    CHECK(b.base().matrix() == a.base().matrix());
    for (const auto& p : enumerate_phi(2, 3)) {
        CHECK(b.stage(p.head(1)) == a.stage(p.head(1)));
        CHECK(b.stage(p) == a.stage(p));
    }
    CHECK(to_json(b).dump() == to_json(a).dump());

    const AdaptiveInterferometer hom = adaptive_from_json(read_json_file(test::data_path("hom.json")));
    CHECK(hom.adaptive_modes() == 0);
    CHECK(hom.photons() == 2);

    Json bad = to_json(a);
    bad["u0"]["re"][0] = 5.0;
    CHECK_THROWS_AS(adaptive_from_json(bad), InputError);
    bad = to_json(a);
    bad["n"] = 9;
    CHECK_THROWS_AS(adaptive_from_json(bad), InputError);
    bad = to_json(a);
    bad.erase("u0");
    CHECK_THROWS_AS(adaptive_from_json(bad), InputError);
}

TEST_CASE("distributions, Gram matrices and models round-trip") {
    const AdaptiveInterferometer a = random_adaptive(4, 1, 2, 3);
    for (const OutputDistribution& d : {joint_distribution(a), final_distribution(a)}) {
        const OutputDistribution e = distribution_from_json(round_trip_text(to_json(d)));
        CHECK(e.kind == d.kind);
        CHECK(e.modes == d.modes);
        CHECK(e.photons == d.photons);
        CHECK(e.adaptive_modes == d.adaptive_modes);
        REQUIRE(e.entries.size() == d.entries.size());
        for (std::size_t i = 0; i < d.entries.size(); ++i) {
            CHECK(e.entries[i].first == d.entries[i].first);
            CHECK(e.entries[i].second == d.entries[i].second);
        }
    }

    RealMatrix k(2, 2);
    k << 1.0, 0.123456789012345, 0.123456789012345, 1.0;
    const GramMatrix g{k, "estimated", 500};
    const GramMatrix h = gram_from_json(round_trip_text(to_json(g)));
    CHECK(h.entries == g.entries);
    CHECK(h.provenance == "estimated");
    CHECK(h.shots == 500);
    CHECK_FALSE(to_json(GramMatrix{k, "exact", 0}).contains("shots"));

    SvmModel m;
    m.alphas = {0.25, 0.0, 1.0 / 3.0};
    m.bias = -0.125;
    m.lambda = 0.01;
    m.labels = {1, -1, -1};
    const SvmModel n = model_from_json(round_trip_text(to_json(m)));
    CHECK(n.alphas == m.alphas);
    CHECK(n.bias == m.bias);
    CHECK(n.lambda == m.lambda);
    CHECK(n.labels == m.labels);
    Json bad = to_json(m);
    bad["labels"][1] = 0;
    CHECK_THROWS_AS(model_from_json(bad), InputError);
}

TEST_CASE("dataset CSV") {
    std::istringstream in("# comment\nx1,x2,label\n0.5,1.0,1\n\n-2,3e-1,-1\n");
    const Dataset d = parse_dataset_csv(in, "t");
    CHECK(d.size() == 2);
    CHECK(d.points[1][1] == 0.3);
    CHECK(d.labels == std::vector<int>{1, -1});

    std::ostringstream out;
    write_dataset_csv(out, d);
    std::istringstream back(out.str());
    const Dataset e = parse_dataset_csv(back);
    CHECK(e.points == d.points);
    CHECK(e.labels == d.labels);

    std::istringstream bad_number("0.5,1.0,1\n0.5,abc,1\n");
    CHECK_THROWS_WITH_AS(parse_dataset_csv(bad_number), doctest::Contains("line 2, field 2"), InputError);
    std::istringstream bad_label("0.5,1.0,1\n0.5,1.0,3\n");
    CHECK_THROWS_WITH_AS(parse_dataset_csv(bad_label), doctest::Contains("line 2, field 3"), InputError);
    std::istringstream ragged("0.5,1.0,1\n0.5,-1\n");
    CHECK_THROWS_WITH_AS(parse_dataset_csv(ragged), doctest::Contains("line 2"), InputError);
    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(parse_dataset_csv(empty), InputError);
    CHECK_THROWS_AS(read_dataset_csv("/nonexistent/file.csv"), InputError);
}

TEST_CASE("json parsing and number formatting") {
    CHECK_THROWS_WITH_AS(parse_json("{\"a\": [1,", "x.json"), doctest::Contains("x.json"), InputError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), InputError);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
