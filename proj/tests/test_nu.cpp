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

#include "dio.hpp"
#include "dual_compare.hpp"
#include "nu.hpp"
#include "support.hpp"

using namespace latcount;
using namespace latcount::testing;

namespace {

LatticeBasis golden_lattice() {
    const Real alpha = (sqrt(Real(5)) - 1) / 2;
    return build_application(alpha, Real(0), Real("0.5"), Real(100)).lattice;
}

// min |x_1 ... x_n| over every z with |z_i| <= bound and 0 < |Bz| < rho.
Real brute_nu(const LatticeBasis& l, const Real& rho, std::int64_t bound) {
    const int n = static_cast<int>(l.dim());
    Real best = -1;
    std::vector<std::int64_t> lo(n, -bound), hi(n, bound);
    for_each_in_rect(lo, hi, [&](const std::vector<std::int64_t>& z) {
        if (std::all_of(z.begin(), z.end(), [](auto v) { return v == 0; })) return;
        Vector x = l.point(z);
        Real len = norm(x);
        if (!(len < rho)) return;
        Real p = 1;
        for (const auto& c : x) p *= abs(c);
        if (best < 0 || p < best) best = p;
    });
    return best;
}

std::size_t brute_delta_count(int n, int r) {
    std::size_t count = 0;
    std::vector<std::int64_t> lo(n, -r), hi(n, r);
    for_each_in_rect(lo, hi, [&](const std::vector<std::int64_t>& m) {
        std::int64_t sum = 0, sq = 0;
        for (auto v : m) {
            sum += v;
            sq += v * v;
        }
        if (sum == 0 && sq < r * r) ++count;
    });
    return count;
}

}  // namespace

TEST_CASE("Hermite constants") {
    HermiteValue g2 = hermite_constant(2);
    CHECK(g2.exact);
    CHECK(abs(g2.value - 2 / sqrt(Real(3))) < pow10_neg(45));
    CHECK(abs(g2.value - sqrt(Real(4) / 3)) < pow10_neg(45));
    CHECK(abs(pow(hermite_constant(8).value, 8) - 256) < pow10_neg(40));
    CHECK(abs(pow(hermite_constant(3).value, 3) - 2) < pow10_neg(45));

    HermiteValue g9 = hermite_constant(9);
    CHECK_FALSE(g9.exact);
    CHECK(abs(g9.value - pow(Real(4) / 3, 4)) < pow10_neg(45));
    CHECK(abs(hermite_threshold(2) - sqrt(g2.value)) < pow10_neg(45));
    CHECK_THROWS_AS(hermite_constant(1), Error);

    for (int n = 2; n <= 8; ++n) CHECK(hermite_constant(n).value <= pow(Real(4) / 3, Real(n - 1) / 2) + pow10_neg(45));
}

TEST_CASE("star") {
    const Real g2 = hermite_constant(2).value;
    CHECK(star(Real("0.5"), 2) == g2);
    CHECK(star(Real(10), 2) == 10);
    const Real g3 = hermite_constant(3).value;
    CHECK(star(g3, 3) == g3);
}

TEST_CASE("coordinate products") {
    Vector x{Real(3), Real("1e-40"), Real(4)};
    CHECK(has_zero_coordinate(x, norm(x)));
    CHECK(coordinate_product(x, norm(x)) == 0);
    Vector y{Real(3), Real("-0.5"), Real(4)};
    CHECK_FALSE(has_zero_coordinate(y, norm(y)));
    CHECK(coordinate_product(y, norm(y)) == 6);
}

TEST_CASE("nu of the integer lattice is zero at an axis vector") {
    for (std::size_t n = 2; n <= 4; ++n) {
        NuResult r = nu(LatticeBasis(Matrix::identity(n)), Real(2));
        CHECK(r.value == 0);
        CHECK(r.zero_coordinate);
        IntVector e1(n, 0);
        e1[0] = 1;
        CHECK(r.minimizer.z == e1);
    }
}

TEST_CASE("nu domain errors") {
    LatticeBasis z2(Matrix::identity(2));
    CHECK_THROWS_AS(nu(z2, Real(1)), Error);
    CHECK_THROWS_AS(nu(z2, Real(-1)), Error);
    LatticeBasis big(Matrix::diagonal(Vector{Real(10), Real(10)}));
    CHECK_THROWS_AS(nu(big, Real(5)), Error);
}

TEST_CASE("nu on the golden lattice respects the phi lower bound") {
    NuResult r = nu(golden_lattice(), Real(2));
    CHECK(r.value > 0);
    CHECK_FALSE(r.zero_coordinate);
    CHECK(r.value >= Real(1) / 12);
}

TEST_CASE("nu against brute force") {
    std::mt19937_64 rng(31);
    const Real rho = 3;
    for (int n = 2; n <= 3; ++n) {
        for (int k = 0; k < (n == 2 ? 30 : 10); ++k) {
            LatticeBasis l = random_unimodular(n, rng);
            // Same lattice, smaller coordinate box.
            const LatticeBasis red = lll_reduce(l).reduced;
            const auto bound = static_cast<std::int64_t>(ceil(rho * operator_norm(inverse(red.basis()))).convert_to<double>()) + 1;
            NuResult r = nu(l, rho);
            Real expected = brute_nu(red, rho, bound);
            CHECK(rel_diff(r.value, expected) < pow10_neg(40));
            CHECK(r.minimizer.norm < rho);
            CHECK(rel_diff(coordinate_product(r.minimizer.v, r.minimizer.norm), r.value) < pow10_neg(40));
        }
    }
}

TEST_CASE("hyperbolic and exhaustive routes agree") {
    NuOptions ex, hy;
    ex.route = NuRoute::Exhaustive;
    hy.route = NuRoute::Hyperbolic;

    LatticeBasis g = golden_lattice();
    for (const char* rho : {"5", "40", "300"}) {
        NuResult a = nu(g, Real(rho), ex);
        NuResult b = nu(g, Real(rho), hy);
        CHECK(rel_diff(a.value, b.value) < pow10_neg(40));
        CHECK(a.minimizer.z == b.minimizer.z);
    }

    std::mt19937_64 rng(32);
    for (int n = 2; n <= 3; ++n) {
        for (int k = 0; k < 5; ++k) {
            LatticeBasis l = random_unimodular(n, rng);
            const Real rho = n == 2 ? Real(200) : Real(25);
            NuResult a = nu(l, rho, ex);
            NuResult b = nu(l, rho, hy);
            CHECK(rel_diff(a.value, b.value) < pow10_neg(40));
            CHECK(a.minimizer.z == b.minimizer.z);
        }
    }
}

TEST_CASE("profile matches pointwise nu and is monotone") {
    std::mt19937_64 rng(33);
    for (int n = 2; n <= 4; ++n) {
        for (int k = 0; k < 4; ++k) {
            LatticeBasis l = random_unimodular(n, rng);
            std::vector<Real> grid = probe_grid(n, Real(12), 12);
            NuProfile p = nu_profile(l, grid);
            REQUIRE(p.values.size() == grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                CHECK(p.values[i] == nu(l, grid[i]).value);
                if (i > 0) CHECK(p.values[i] <= p.values[i - 1]);
                if (p.values[i] > 0) {
                    // Arithmetic-geometric mean inequality.
                    CHECK(pow(grid[i], n) / p.values[i] >= pow(Real(n), Real(n) / 2) * (1 - pow10_neg(30)));
                }
            }
        }
    }
    std::vector<Real> bad{Real(3), Real(2)};
    CHECK_THROWS_AS(nu_profile(LatticeBasis(Matrix::identity(2)), bad), Error);
}

TEST_CASE("probe grid") {
    std::vector<Real> g = probe_grid(3, Real(20), 10);
    REQUIRE(g.size() == 10);
    CHECK(abs(g.front() - Real("1.01") * hermite_threshold(3)) < pow10_neg(40));
    CHECK(abs(g.back() - 20) < pow10_neg(40));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK_THROWS_AS(probe_grid(3, Real(1), 10), Error);
    CHECK_THROWS_AS(probe_grid(3, Real(20), 0), Error);
}

TEST_CASE("weak admissibility probe") {
    NuProfile z3 = weak_admissibility_probe(LatticeBasis(Matrix::identity(3)), Real(10), 5);
    REQUIRE(z3.first_flag());
    CHECK(*z3.first_flag() == 0);

    NuProfile g = weak_admissibility_probe(golden_lattice(), Real(100), 20);
    CHECK_FALSE(g.first_flag());
    for (const auto& v : g.values) CHECK(v > 0);

    LatticeBasis nonunimodular(Matrix::diagonal(Vector{Real(2), Real(1)}));
    CHECK_THROWS_AS(weak_admissibility_probe(nonunimodular, Real(10), 5), Error);
}

TEST_CASE("delta families") {
    DeltaFamily d22 = delta_set(2, Real(2));
    CHECK(d22.exponents == std::vector<std::vector<int>>{{-1, 1}, {0, 0}, {1, -1}});
    CHECK(delta_set(2, Real(1)).exponents == std::vector<std::vector<int>>{{0, 0}});
    CHECK(delta_set(3, Real(2)).exponents.size() == 7);
    for (int n = 2; n <= 3; ++n)
        for (int r : {1, 2, 4}) CHECK(delta_set(n, Real(r)).exponents.size() == brute_delta_count(n, r));
    CHECK_THROWS_AS(delta_set(1, Real(2)), Error);
}

TEST_CASE("delta family growth is polynomial of degree n-1") {
    for (int n = 2; n <= 4; ++n) {
        std::vector<double> ratio;
        for (int r : {2, 4, 8, 16}) {
            const double c = static_cast<double>(delta_set(n, Real(r)).exponents.size());
            ratio.push_back(c / std::pow(r, n - 1));
        }
        const double fitted = *std::max_element(ratio.begin(), ratio.end());
        CHECK(std::isfinite(fitted));
        // The ratio settles once the lattice points fill the (n-1)-ball.
        CHECK(ratio[3] <= 1.5 * ratio[2]);
        CHECK(ratio[3] >= ratio[2] / 1.5);
    }
}

TEST_CASE("S sums") {
    LatticeBasis z2(Matrix::identity(2));
    SSumResult s1 = s_sum(z2, Real(1));
    CHECK(s1.value == 1);
    CHECK(s1.members == 1);
    SSumResult s2 = s_sum(z2, Real(2));
    CHECK(s2.value == 9);
    CHECK(s2.members == 3);
    CHECK(s2.max_term == 4);

    std::mt19937_64 rng(34);
    for (int n = 2; n <= 3; ++n) {
        LatticeBasis l = random_unimodular(n, rng);
        SSumResult s = s_sum(l, Real(3), {}, 2);
        CHECK(s.value >= pow(shortest_vector(l).lambda1, -n));
        CHECK(s.members == delta_set(n, Real(3)).exponents.size());
        CHECK(s.value == s_sum(l, Real(3), {}, 1).value);
    }
}

TEST_CASE("first minimum of a diagonal image is controlled by nu") {
    std::mt19937_64 rng(35);
    for (int n = 2; n <= 3; ++n) {
        const Real c = pow(Real(n), -Real(n) / 2);
        for (int k = 0; k < 10; ++k) {
            LatticeBasis l = random_unimodular(n, rng);
            DeltaFamily fam = delta_set(n, Real(4));
            const auto& m = fam.exponents[static_cast<std::size_t>(rng() % fam.exponents.size())];
            Vector d, dinv;
            for (int e : m) {
                d.push_back(pow(Real(2), e));
                dinv.push_back(pow(Real(2), -e));
            }
            LatticeBasis dl(Matrix::diagonal(d) * l.basis());
            const Real radius = star(operator_norm(Matrix::diagonal(dinv)), n);
            const Real lhs = pow(shortest_vector(dl).lambda1, n);
            CHECK(lhs >= c * nu(l, radius).value);
        }
    }
}
