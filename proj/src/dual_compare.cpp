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

#include "dual_compare.hpp"

#include <string>

namespace latcount {

bool is_signed_permutation(const Matrix& s) {
    const std::size_t n = s.dim();
    const Real tol = pow10_neg(30);
    std::vector<int> per_col(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int per_row = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const Real a = abs(s(i, j));
            if (a <= tol) continue;
            if (abs(a - 1) > tol) return false;
            ++per_row;
            ++per_col[j];
        }
        if (per_row != 1) return false;
    }
    for (int c : per_col)
        if (c != 1) return false;
    return true;
}

bool verify_prop_conditions(const Matrix& a, const Matrix& s, const Matrix& r) {
    const std::size_t n = a.dim();
    if (s.dim() != n || r.dim() != n) return false;
    if (!is_signed_permutation(s)) return false;
    const Real tol = pow10_neg(25);
    for (const auto& e : r.entries())
        if (!near_integer(e, tol)) return false;
    if (abs(abs(determinant(r)) - 1) > tol) return false;
    return (a.transpose() * s * a).max_abs_diff(r) <= tol;
}

Matrix symplectic_form(int m) {
    if (m < 1) fail(ErrorKind::InvalidInput, "symplectic form needs m >= 1");
    const std::size_t n = 2 * static_cast<std::size_t>(m);
    std::vector<Rational> e(n * n, Rational(0));
    for (std::size_t i = 0; i < static_cast<std::size_t>(m); ++i) {
        e[i * n + (i + m)] = 1;
        e[(i + m) * n + i] = -1;
    }
    return Matrix(n, std::move(e));
}

NuComparison nu_profile_compare(const LatticeBasis& lattice, std::span<const Real> grid, const NuOptions& options) {
    const LatticeBasis dual = dual_basis(lattice);
    NuProfile p = nu_profile(lattice, grid, options);
    NuProfile d = nu_profile(dual, grid, options);
    NuComparison cmp;
    cmp.max_abs_diff = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Real diff = abs(p.values[i] - d.values[i]);
        if (diff > cmp.max_abs_diff) cmp.max_abs_diff = diff;
        cmp.rho.push_back(grid[i]);
        cmp.nu_primal.push_back(p.values[i]);
        cmp.nu_dual.push_back(d.values[i]);
        cmp.abs_diff.push_back(std::move(diff));
        if (p.zero_flags[i]) ++cmp.primal_flags;
        if (d.zero_flags[i]) ++cmp.dual_flags;
    }
    return cmp;
}

namespace {

Rational random_rational(std::mt19937_64& engine, int digits = 50) {
    std::string s = (engine() & 1) ? "-0." : "0.";
    for (int i = 0; i < digits; ++i) s.push_back(static_cast<char>('0' + engine() % 10));
    return *parse_rational(s);
}

constexpr int kMaxDraws = 10;
const char* const kConditionFloor = "0.001";

LatticeBasis rescale_unimodular(const Matrix& a0) {
    const Real det = determinant(a0);
    const Real c = pow(abs(det), -1 / Real(a0.dim()));
    return LatticeBasis(a0.scaled(c));
}

}  // namespace

Real random_decimal(std::mt19937_64& engine, int digits) { return to_real(random_rational(engine, digits)); }

LatticeBasis example31_build(int n, std::uint64_t seed) {
    if (n < 3) fail(ErrorKind::InvalidInput, "example31 needs n >= 3");
    std::mt19937_64 engine(seed);
    const std::size_t m = static_cast<std::size_t>(n);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        std::vector<Rational> e(m * m);
        // Top-left (n-1)x(n-1) block A'_0 and the column x.
        for (std::size_t i = 0; i + 1 < m; ++i)
            for (std::size_t j = 0; j < m; ++j) e[i * m + j] = random_rational(engine);
        Rational y = random_rational(engine);
        if (y == e[(m - 2) * m + (m - 1)]) continue;
        // Last row: last row of A'_0 followed by y.
        for (std::size_t j = 0; j + 1 < m; ++j) e[(m - 1) * m + j] = e[(m - 2) * m + j];
        e[(m - 1) * m + (m - 1)] = y;
        // Swap the first and the last row.
        for (std::size_t j = 0; j < m; ++j) std::swap(e[j], e[(m - 1) * m + j]);

        Matrix a0(m, std::move(e));
        Rational det = *exact_determinant(a0);
        if (abs(det) < *parse_rational(kConditionFloor)) continue;

        LatticeBasis lat = rescale_unimodular(a0);
        const LatticeBasis dual = dual_basis(lat);
        if (abs(dual.basis()(m - 1, m - 1)) > pow10_neg(40))
            fail(ErrorKind::PrecisionExhausted, "example31 dual entry does not vanish at this precision");
        return lat;
    }
    fail(ErrorKind::Degenerate, "example31: degenerate draw after 10 attempts");
}

LatticeBasis random_unimodular(int n, std::mt19937_64& engine) {
    if (n < 2) fail(ErrorKind::InvalidInput, "lattice dimension must be at least 2");
    const std::size_t m = static_cast<std::size_t>(n);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        std::vector<Rational> e(m * m);
        for (auto& x : e) x = random_rational(engine);
        Matrix a0(m, std::move(e));
        if (abs(*exact_determinant(a0)) < *parse_rational(kConditionFloor)) continue;
        return rescale_unimodular(a0);
    }
    fail(ErrorKind::Degenerate, "random lattice: degenerate draw after 10 attempts");
}

}  // namespace latcount
