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

// Brute-force oracles and instance generators shared by the tests. The
// oracles work on lattices and boxes with small decimal entries so that
// every comparison can be done in exact integer arithmetic.

#pragma once

#include "box.hpp"
#include "matrix.hpp"
#include "reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace latcount::testing {

/// Basis with entries num / 10 (row-major).
struct DecimalLattice {
    int n = 0;
    std::vector<std::int64_t> num;

    std::int64_t at(int i, int j) const { return num[static_cast<std::size_t>(i * n + j)]; }

    Matrix matrix() const {
        std::vector<Rational> e;
        for (auto v : num) e.emplace_back(v, 10);
        return Matrix(static_cast<std::size_t>(n), std::move(e));
    }
};

/// Box with sides and shift given in hundredths.
struct DecimalBox {
    std::vector<std::int64_t> t;
    std::vector<std::int64_t> y;

    AlignedBox box() const {
        Vector tt, yy;
        for (auto v : t) tt.push_back(to_real(Rational(v, 100)));
        for (auto v : y) yy.push_back(to_real(Rational(v, 100)));
        return AlignedBox{tt, yy};
    }
};

inline double det_double(const DecimalLattice& l) {
    std::vector<double> a(l.num.begin(), l.num.end());
    const int n = l.n;
    double det = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
        if (a[p * n + c] == 0) return 0;
        if (p != c) {
            for (int k = 0; k < n; ++k) std::swap(a[p * n + k], a[c * n + k]);
            det = -det;
        }
        det *= a[c * n + c];
        for (int r = c + 1; r < n; ++r) {
            double f = a[r * n + c] / a[c * n + c];
            for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
        }
    }
    return det / std::pow(10.0, n);
}

/// Random basis with entries in [-range, range] (one decimal), |det| >= min_det.
inline DecimalLattice random_decimal_lattice(std::mt19937_64& rng, int n, int range_tenths, double min_det) {
    std::uniform_int_distribution<std::int64_t> d(-range_tenths, range_tenths);
    while (true) {
        DecimalLattice l{n, {}};
        for (int i = 0; i < n * n; ++i) l.num.push_back(d(rng));
        if (std::abs(det_double(l)) >= min_det) return l;
    }
}

/// Inverse of the basis in doubles, row-major.
inline std::vector<double> inverse_double(const DecimalLattice& l) {
    const int n = l.n;
    std::vector<double> a(l.num.begin(), l.num.end());
    for (auto& v : a) v /= 10;
    std::vector<double> inv(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
        for (int k = 0; k < n; ++k) {
            std::swap(a[p * n + k], a[c * n + k]);
            std::swap(inv[p * n + k], inv[c * n + k]);
        }
        const double piv = a[c * n + c];
        for (int k = 0; k < n; ++k) {
            a[c * n + k] /= piv;
            inv[c * n + k] /= piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r * n + c];
            for (int k = 0; k < n; ++k) {
                a[r * n + k] -= f * a[c * n + k];
                inv[r * n + k] -= f * inv[c * n + k];
            }
        }
    }
    return inv;
}

template <class F>
void for_each_in_rect(const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi, F&& f) {
    std::vector<std::int64_t> z(lo);
    while (true) {
        f(z);
        std::size_t i = 0;
        while (i < z.size() && z[i] == hi[i]) {
            z[i] = lo[i];
            ++i;
        }
        if (i == z.size()) return;
        ++z[i];
    }
}

/// Closed-box count by looping over the bounding rectangle of the box's
/// preimage; membership is decided in exact integer arithmetic.
inline std::uint64_t brute_count(const DecimalLattice& l, const DecimalBox& b) {
    const int n = l.n;
    const auto inv = inverse_double(l);
    std::vector<std::int64_t> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        double mn = 1e300, mx = -1e300;
        for (int mask = 0; mask < (1 << n); ++mask) {
            double s = 0;
            for (int j = 0; j < n; ++j) {
                double w = (b.y[j] + ((mask >> j) & 1) * b.t[j]) / 100.0;
                s += inv[i * n + j] * w;
            }
            mn = std::min(mn, s);
            mx = std::max(mx, s);
        }
        lo[i] = static_cast<std::int64_t>(std::floor(mn)) - 2;
        hi[i] = static_cast<std::int64_t>(std::ceil(mx)) + 2;
    }
    std::uint64_t count = 0;
    for_each_in_rect(lo, hi, [&](const std::vector<std::int64_t>& z) {
        for (int i = 0; i < n; ++i) {
            std::int64_t w = 0;  // tenths
            for (int j = 0; j < n; ++j) w += l.at(i, j) * z[j];
            // y/100 <= w/10 <= (y+t)/100  <=>  y <= 10 w <= y + t
            if (10 * w < b.y[i] || 10 * w > b.y[i] + b.t[i]) return;
        }
        ++count;
    });
    return count;
}

/// Squared norm in hundredths for integer coordinates z.
inline std::int64_t norm2_hundredths(const DecimalLattice& l, const std::vector<std::int64_t>& z) {
    std::int64_t s = 0;
    for (int i = 0; i < l.n; ++i) {
        std::int64_t w = 0;
        for (int j = 0; j < l.n; ++j) w += l.at(i, j) * z[j];
        s += w * w;
    }
    return s;
}

inline bool canonical(const std::vector<std::int64_t>& z) {
    for (auto v : z)
        if (v != 0) return v > 0;
    return false;
}

/// Canonical nonzero z with |z_i| <= bound and |Lz|^2 < limit_hundredths / 100.
inline std::set<std::vector<std::int64_t>> brute_vectors(const DecimalLattice& l, std::int64_t bound,
                                                         std::int64_t limit_hundredths) {
    std::set<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> lo(l.n, -bound), hi(l.n, bound);
    for_each_in_rect(lo, hi, [&](const std::vector<std::int64_t>& z) {
        if (!canonical(z)) return;
        if (norm2_hundredths(l, z) < limit_hundredths) out.insert(z);
    });
    return out;
}

/// A random box with sides in (0, max_side] and shift in [-5, 5].
inline DecimalBox random_box(std::mt19937_64& rng, int n, int max_side_hundredths) {
    std::uniform_int_distribution<std::int64_t> side(1, max_side_hundredths);
    std::uniform_int_distribution<std::int64_t> shift(-500, 500);
    DecimalBox b;
    for (int i = 0; i < n; ++i) {
        b.t.push_back(side(rng));
        b.y.push_back(shift(rng));
    }
    return b;
}

inline Real rel_diff(const Real& a, const Real& b) {
    Real scale = abs(a) > abs(b) ? abs(a) : abs(b);
    if (scale == 0) return Real(0);
    return abs(a - b) / scale;
}

}  // namespace latcount::testing
