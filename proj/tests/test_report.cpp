/*
 * Copyright 2026 The latcount Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "report.hpp"
#include "support.hpp"

#include <sstream>

using namespace latcount;
using namespace latcount::testing;

namespace {

Json meta() { return Json{{"version", "test"}, {"precision", 50}, {"seed", 1}, {"config", Json::object()}}; }

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("real values round-trip through their text form") {
    std::mt19937_64 rng(81);
    for (int k = 0; k < 50; ++k) {
        Real x = sqrt(Real(static_cast<int>(rng() % 1000) + 2)) * pow(Real(10), static_cast<int>(rng() % 20) - 10);
        CHECK(rel_diff(parse_real(real_text(x)), x) < pow10_neg(48));
    }
    CHECK(real_text(Real("0.25")) == real_text(Real("0.25")));
}

TEST_CASE("count report in both formats") {
    LatticeBasis z2(Matrix::identity(2));
    AlignedBox box = make_box(Vector{Real(2), Real(3)}, Vector(2, Real(0)));
    Report r = report_count(count_points(z2, box), box);

    Json parsed = Json::parse(render_json(r, meta()));
    CHECK(parsed["version"] == "test");
    CHECK(parsed["seed"] == 1);
    CHECK(parsed["count"]["count"] == 12);
    CHECK(parse_real(parsed["count"]["volume"].get<std::string>()) == 6);
    CHECK(parse_real(parsed["count"]["error"].get<std::string>()) == 6);

    auto csv = lines(render_csv(r, meta()));
    REQUIRE(csv.size() >= 7);
    CHECK(csv[0] == "# version: test");
    CHECK(csv[1] == "# precision: 50");
    CHECK(csv[4] == "# kind: count");
    CHECK(csv[5].rfind("count,volume,error", 0) == 0);
    CHECK(csv[6].rfind("12,", 0) == 0);
}

TEST_CASE("profile table and flag") {
    NuProfile p = weak_admissibility_probe(LatticeBasis(Matrix::identity(2)), Real(5), 3);
    Report r = report_nu_profile(p);
    CHECK(r.flagged);
    REQUIRE(r.table);
    CHECK(r.table->header.front() == "rho");
    CHECK(r.table->header[1] == "nu");
    CHECK(r.table->header.back() == "zero_flag");
    CHECK(r.table->rows.size() == 3);
}

TEST_CASE("sweep table columns") {
    IrrationalSpec spec = parse_irrational("surd:-1,1,5,2");
    PhiBound phi = phi_from_cf(spec, BigInt(1000000));
    auto rows = dio_sweep(spec.value, Real("0.3"), Real("0.5"), {Real(100), Real(200)}, phi, 1);
    Report r = report_sweep(spec, phi, rows);
    REQUIRE(r.table);
    const std::vector<std::string> expected{"t", "eps", "N", "vol", "abs_error", "ln_vol", "E", "E_prime", "bound"};
    REQUIRE(r.table->header.size() >= expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(r.table->header[i] == expected[i]);
    CHECK(r.table->rows.size() == 2);
    CHECK(render_csv(r, meta()) == render_csv(report_sweep(spec, phi, rows), meta()));
}
