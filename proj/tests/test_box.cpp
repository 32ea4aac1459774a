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

#include "box.hpp"
#include "dio.hpp"
#include "support.hpp"

using namespace latcount;
using namespace latcount::testing;

namespace {

AlignedBox rect(std::initializer_list<const char*> t, std::initializer_list<const char*> y) {
    Vector tt, yy;
    for (auto s : t) tt.push_back(Real(s));
    for (auto s : y) yy.push_back(Real(s));
    return make_box(tt, yy);
}

}  // namespace

TEST_CASE("box validation and volume") {
    CHECK(volume(rect({"1", "1"}, {"0", "0"})) == 1);
    CHECK(volume(rect({"2", "3"}, {"5", "-1"})) == 6);
    CHECK_THROWS_AS(rect({"0", "1"}, {"0", "0"}), Error);
    CHECK_THROWS_AS(rect({"-1", "1"}, {"0", "0"}), Error);
    CHECK_THROWS_AS(make_box(Vector{Real(1)}, Vector{Real(0), Real(0)}), Error);
}

TEST_CASE("T quantity") {
    CHECK(t_quantity(rect({"3", "3", "3"}, {"0", "0", "0"})) == 1);
    CHECK(abs(t_quantity(rect({"1", "4"}, {"0", "0"})) - 2) < pow10_neg(45));

    const Real alpha = (sqrt(Real(5)) - 1) / 2;
    const Real eps("0.5"), t(100);
    Application app = build_application(alpha, Real("0.3"), eps, t);
    const Real tq = t_quantity(app.box);
    CHECK(rel_diff(tq, sqrt(alpha * t / eps)) < pow10_neg(45));
    CHECK(tq > sqrt(eps * t));
    CHECK(sqrt(eps * t) > 2);
    CHECK(rel_diff(volume(app.box), eps * t) < pow10_neg(45));
}

TEST_CASE("normalization") {
    LatticeBasis l(parse_matrix_json(R"([["1.3","0.2"],["-0.4","0.9"]])"));
    Normalization cube = normalize(l, rect({"2", "2"}, {"1", "0"}));
    CHECK(cube.u.max_abs_diff(Matrix::identity(2)) == 0);
    CHECK(cube.lambda.basis().max_abs_diff(l.basis()) == 0);
    CHECK(cube.tbar == 2);

    AlignedBox b = rect({"1", "4"}, {"0", "0"});
    Normalization nb = normalize(l, b);
    CHECK(nb.u.max_abs_diff(Matrix::diagonal(Vector{Real(2), Real("0.5")})) < pow10_neg(45));
    CHECK(abs(nb.tbar - 2) < pow10_neg(45));

    std::mt19937_64 rng(41);
    LatticeBasis l3(random_decimal_lattice(rng, 3, 20, 0.3).matrix());
    for (int k = 0; k < 20; ++k) {
        DecimalBox db = random_box(rng, 3, 1000);
        AlignedBox box = db.box();
        Normalization nm = normalize(l3, box);
        CHECK(rel_diff(operator_norm(nm.u), t_quantity(box)) < pow10_neg(40));
        CHECK(rel_diff(volume(nm.cube), volume(box)) < pow10_neg(40));
    }
}

TEST_CASE("integer lattice examples") {
    LatticeBasis z2(Matrix::identity(2));
    CHECK(count_points(z2, rect({"1", "1"}, {"0", "0"})).count == 4);
    CHECK(count_points(z2, rect({"2", "3"}, {"0", "0"})).count == 12);
    CHECK(count_points(z2, rect({"0.5", "0.5"}, {"0.2", "0.2"})).count == 0);
    CHECK(count_points(z2, rect({"0.5", "2"}, {"-0.25", "0.5"})).count == 2);

    CountResult corners = count_points(z2, rect({"1", "1"}, {"0", "0"}));
    CHECK(corners.boundary_total == 4);

    LatticeBasis z3(Matrix::identity(3));
    CHECK(count_points(z3, rect({"2", "2", "2"}, {"-1", "-1", "-1"})).count == 27);
    CHECK_THROWS_AS(count_points(z3, rect({"1", "1"}, {"0", "0"})), Error);
}

TEST_CASE("every point is visited once and lies in the box") {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 20; ++k) {
        DecimalLattice dl = random_decimal_lattice(rng, 2, 20, 0.3);
        DecimalBox db = random_box(rng, 2, 800);
        LatticeBasis l(dl.matrix());
        AlignedBox box = db.box();
        std::set<IntVector> seen;
        for_each_point_in_box(l, box, [&](const BoxPoint& p) {
            CHECK(seen.insert(p.z).second);
            Vector w = l.point(p.z);
            for (std::size_t i = 0; i < 2; ++i) {
                CHECK(abs(w[i] - p.w[i]) < pow10_neg(30));
                CHECK(w[i] >= box.y[i] - pow10_neg(25));
                CHECK(w[i] <= box.y[i] + box.t[i] + pow10_neg(25));
            }
        });
        CHECK(seen.size() == brute_count(dl, db));
    }
}

TEST_CASE("count agrees with the brute-force oracle") {
    std::mt19937_64 rng(43);
    int mismatches = 0;
    for (int k = 0; k < 200; ++k) {
        const int n = k % 2 == 0 ? 2 : 3;
        DecimalLattice dl = random_decimal_lattice(rng, n, 20, 0.3);
        DecimalBox db = random_box(rng, n, 1000);
        const std::uint64_t expected = brute_count(dl, db);
        const std::uint64_t got = count_points(LatticeBasis(dl.matrix()), db.box()).count;
        if (got != expected) ++mismatches;
        CHECK(got == expected);
    }
    CHECK(mismatches == 0);
}

TEST_CASE("translation by a lattice vector preserves the count") {
    std::mt19937_64 rng(44);
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 2;
        DecimalLattice dl = random_decimal_lattice(rng, n, 20, 0.3);
        LatticeBasis l(dl.matrix());
        AlignedBox box = random_box(rng, n, 600).box();
        const std::uint64_t base = count_points(l, box).count;
        for (int j = 0; j < n; ++j) {
            AlignedBox moved = box;
            Vector col = l.basis().column(static_cast<std::size_t>(j));
            for (int i = 0; i < n; ++i) moved.y[static_cast<std::size_t>(i)] += col[static_cast<std::size_t>(i)];
            CHECK(count_points(l, moved).count == base);
        }
    }
}

TEST_CASE("candidate budget is reported") {
    CountOptions tiny;
    tiny.candidate_budget = 5;
    CHECK_THROWS_AS(count_points(LatticeBasis(Matrix::identity(2)), rect({"10", "10"}, {"0", "0"}), tiny), BudgetError);
}

TEST_CASE("relative error shrinks on growing homothetic boxes") {
    const Real alpha = (sqrt(Real(5)) - 1) / 2;
    LatticeBasis l = build_application(alpha, Real(0), Real("0.5"), Real(100)).lattice;
    std::vector<double> rel;
    for (int k = 0; k < 10; ++k) {
        const Real side = pow(Real(2), Real(k) / 2 + 3);
        Vector t{side, side}, y{Real("0.123"), Real("-0.456")};
        AlignedBox box = make_box(t, y);
        const Real vol = volume(box);
        const Real err = abs(Real(count_points(l, box).count) - vol);
        rel.push_back((err / vol).convert_to<double>());
    }
    // Individual small boxes can hit the volume exactly, so compare halves.
    const double early = *std::max_element(rel.begin(), rel.begin() + 5);
    const double late = *std::max_element(rel.begin() + 5, rel.end());
    CHECK(late < early);
    CHECK(rel.back() < 1e-2);
}
