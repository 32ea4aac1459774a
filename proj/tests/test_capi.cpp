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

#include <latcount/latcount.h>

#include "support.hpp"

#include <json.hpp>

#include <memory>
#include <string>

using namespace latcount::testing;

namespace {

struct Ctx {
    latc_context* ctx = nullptr;
    explicit Ctx(unsigned digits = 0) { REQUIRE(latc_context_new(digits, &ctx) == LATC_OK); }
    ~Ctx() { latc_context_free(ctx); }
    std::string error() const { return latc_last_error(ctx); }
};

using LatticePtr = std::unique_ptr<latc_lattice, decltype(&latc_lattice_free)>;
using BoxPtr = std::unique_ptr<latc_box, decltype(&latc_box_free)>;
using ResultPtr = std::unique_ptr<latc_result, decltype(&latc_result_free)>;

LatticePtr lattice(Ctx& c, const char* json) {
    latc_lattice* l = nullptr;
    REQUIRE(latc_lattice_parse(c.ctx, json, &l) == LATC_OK);
    return {l, &latc_lattice_free};
}

BoxPtr box(Ctx& c, const char* t, const char* y) {
    latc_box* b = nullptr;
    REQUIRE(latc_box_parse(c.ctx, t, y, &b) == LATC_OK);
    return {b, &latc_box_free};
}

ResultPtr wrap(latc_result* r) { return {r, &latc_result_free}; }

std::string matrix_text(const DecimalLattice& l) {
    nlohmann::json m = nlohmann::json::array();
    for (int i = 0; i < l.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < l.n; ++j) row.push_back(std::to_string(l.at(i, j)) + "/10");
        m.push_back(row);
    }
    return m.dump();
}

std::string vector_text(const std::vector<std::int64_t>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (auto x : v) a.push_back(std::to_string(x) + "/100");
    return a.dump();
}

}  // namespace

TEST_CASE("contexts") {
    CHECK(std::string(latc_version()).size() > 0);
    latc_context* bad = nullptr;
    CHECK(latc_context_new(10, &bad) == LATC_ERR_INPUT);
    CHECK(bad == nullptr);
    Ctx def;
    CHECK(latc_context_digits(def.ctx) == 50);
    Ctx wide(80);
    CHECK(latc_context_digits(wide.ctx) == 80);
    CHECK(latc_context_set_run_config(def.ctx, "[1,2]") == LATC_ERR_INPUT);
    CHECK(latc_context_set_run_config(def.ctx, "{\"seed\": 7}") == LATC_OK);
    latc_context_free(nullptr);
    latc_result_free(nullptr);
}

TEST_CASE("input errors are reported with a message") {
    Ctx c;
    latc_lattice* l = nullptr;
    CHECK(latc_lattice_parse(c.ctx, "[[1,2],[3]]", &l) == LATC_ERR_INPUT);
    CHECK_FALSE(c.error().empty());
    CHECK(latc_lattice_parse(c.ctx, "[[1,2],[2,4]]", &l) == LATC_ERR_DEGENERATE);
    CHECK(l == nullptr);
    CHECK(latc_lattice_parse(c.ctx, nullptr, &l) == LATC_ERR_INPUT);

    auto z2 = lattice(c, "[[1,0],[0,1]]");
    auto b3 = box(c, "[1,1,1]", nullptr);
    latc_result* r = nullptr;
    CHECK(latc_count(c.ctx, z2.get(), b3.get(), &r) == LATC_ERR_INPUT);
    CHECK(latc_lattice_example31(c.ctx, 2, 1, &l) == LATC_ERR_INPUT);
}

TEST_CASE("count round trip") {
    Ctx c;
    CHECK(latc_context_set_run_config(c.ctx, "{\"seed\": 7, \"command\": \"count\"}") == LATC_OK);
    auto z2 = lattice(c, "[[1,0],[0,1]]");
    auto b = box(c, "[\"2\",\"3\"]", "[0,0]");
    latc_result* raw = nullptr;
    REQUIRE(latc_count(c.ctx, z2.get(), b.get(), &raw) == LATC_OK);
    auto r = wrap(raw);
    CHECK(std::string(latc_result_scalar(r.get(), "count")) == "12");
    CHECK(latc_result_scalar(r.get(), "no_such_key") == nullptr);
    CHECK_FALSE(latc_result_flagged(r.get()));

    auto j = nlohmann::json::parse(latc_result_json(r.get()));
    CHECK(j["version"] == latc_version());
    CHECK(j["precision"] == 50);
    CHECK(j["seed"] == 7);
    CHECK(j["config"]["command"] == "count");
    CHECK(j["count"]["count"] == 12);
    CHECK(std::string(latc_result_csv(r.get())).find("# kind: count") != std::string::npos);
}

TEST_CASE("count through the C interface matches the brute-force oracle") {
    Ctx c;
    std::mt19937_64 rng(91);
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 2;
        DecimalLattice dl = random_decimal_lattice(rng, n, 20, 0.3);
        DecimalBox db = random_box(rng, n, 800);
        auto l = lattice(c, matrix_text(dl).c_str());
        auto b = box(c, vector_text(db.t).c_str(), vector_text(db.y).c_str());
        latc_result* raw = nullptr;
        REQUIRE(latc_count(c.ctx, l.get(), b.get(), &raw) == LATC_OK);
        auto r = wrap(raw);
        CHECK(std::stoull(latc_result_scalar(r.get(), "count")) == brute_count(dl, db));
    }
}

TEST_CASE("degenerate and flagged results") {
    Ctx c;
    auto z3 = lattice(c, "[[1,0,0],[0,1,0],[0,0,1]]");
    latc_result* raw = nullptr;
    REQUIRE(latc_nu_probe(c.ctx, z3.get(), "10", 5, &raw) == LATC_OK);
    auto probe = wrap(raw);
    CHECK(latc_result_flagged(probe.get()));

    auto z2 = lattice(c, "[[1,0],[0,1]]");
    auto b = box(c, "[3,3]", nullptr);
    raw = nullptr;
    CHECK(latc_bound(c.ctx, z2.get(), b.get(), nullptr, &raw) == LATC_ERR_DEGENERATE);
    CHECK(c.error().find("not weakly admissible") != std::string::npos);
}

TEST_CASE("budgets") {
    Ctx c;
    REQUIRE(latc_context_set_budgets(c.ctx, 10, 0) == LATC_OK);
    auto z3 = lattice(c, "[[1,0,0],[0,1,0],[0,0,1]]");
    latc_result* raw = nullptr;
    CHECK(latc_nu(c.ctx, z3.get(), "10", &raw) == LATC_ERR_BUDGET);

    Ctx d;
    REQUIRE(latc_context_set_budgets(d.ctx, 0, 5) == LATC_OK);
    auto z2 = lattice(d, "[[1,0],[0,1]]");
    auto b = box(d, "[10,10]", nullptr);
    CHECK(latc_count(d.ctx, z2.get(), b.get(), &raw) == LATC_ERR_BUDGET);
}

TEST_CASE("Diophantine entry points") {
    Ctx c;
    latc_result* raw = nullptr;
    REQUIRE(latc_dio(c.ctx, "surd:-1,1,5,2", "0.3", "0.5", "1000", nullptr, &raw) == LATC_OK);
    auto r = wrap(raw);
    auto j = nlohmann::json::parse(latc_result_json(r.get()));
    CHECK(j["dio"]["N"] == 500);
    CHECK(j["dio"]["box_count"] == 500);

    CHECK(latc_dio(c.ctx, "surd:-1,1,5,2", "0", "0.5", "8", nullptr, &raw) == LATC_ERR_INPUT);
    CHECK(c.error().find("εt > 4") != std::string::npos);

    raw = nullptr;
    REQUIRE(latc_dio_sweep(c.ctx, "surd:-1,1,5,2", "0.3", "0.5", "[1000, 100]", nullptr, &raw) == LATC_OK);
    auto s = wrap(raw);
    std::string csv = latc_result_csv(s.get());
    CHECK(csv.find("t,eps,N,vol,abs_error,ln_vol,E,E_prime,bound") != std::string::npos);

    latc_lattice* l = nullptr;
    latc_box* b = nullptr;
    REQUIRE(latc_lattice_application(c.ctx, "surd:-1,1,5,2", "0.3", "0.5", "100", &l, &b) == LATC_OK);
    CHECK(latc_lattice_is_unimodular(l));
    CHECK(latc_lattice_dim(l) == 2);
    latc_lattice_free(l);
    latc_box_free(b);
}

TEST_CASE("identical calls give identical output") {
    Ctx a, b;
    latc_result *ra = nullptr, *rb = nullptr;
    REQUIRE(latc_example31(a.ctx, 3, 4, "10", 5, &ra) == LATC_OK);
    REQUIRE(latc_example31(b.ctx, 3, 4, "10", 5, &rb) == LATC_OK);
    auto pa = wrap(ra), pb = wrap(rb);
    CHECK(std::string(latc_result_json(pa.get())) == latc_result_json(pb.get()));
    CHECK(std::string(latc_result_csv(pa.get())) == latc_result_csv(pb.get()));
    CHECK(latc_result_flagged(pa.get()));
}
