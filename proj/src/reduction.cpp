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

#include "reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace latcount {

namespace {

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
    std::int64_t prod = 0;
    std::int64_t sum = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum)) {
        fail(ErrorKind::BudgetExceeded, "integer coefficient overflow");
    }
    return sum;
}

std::vector<Vector> columns_of(const Matrix& m) {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < m.dim(); ++j) cols.push_back(m.column(j));
    return cols;
}

Matrix from_columns(const std::vector<Vector>& cols) {
    const std::size_t n = cols.size();
    std::vector<Real> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = cols[j][i];
    return Matrix(n, std::move(e));
}

GramSchmidt gram_schmidt_columns(const std::vector<Vector>& b) {
    const std::size_t n = b.size();
    GramSchmidt gs;
    gs.mu.assign(n, Vector(n, Real(0)));
    gs.bstar2.assign(n, Real(0));
    std::vector<Vector> bstar(n);
    for (std::size_t i = 0; i < n; ++i) {
        bstar[i] = b[i];
        for (std::size_t j = 0; j < i; ++j) {
            gs.mu[i][j] = dot(b[i], bstar[j]) / gs.bstar2[j];
            for (std::size_t k = 0; k < n; ++k) bstar[i][k] -= gs.mu[i][j] * bstar[j][k];
        }
        gs.bstar2[i] = norm2(bstar[i]);
        if (gs.bstar2[i] == 0) fail(ErrorKind::Degenerate, "degenerate lattice");
        gs.mu[i][i] = 1;
    }
    return gs;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m{n, std::vector<std::int64_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntVector IntMatrix::apply(std::span<const std::int64_t> x) const {
    IntVector z(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] != 0) z[i] = checked_mul_add(z[i], a[i * n + j], x[j]);
    return z;
}

GramSchmidt gram_schmidt(const Matrix& basis) { return gram_schmidt_columns(columns_of(basis)); }

LllResult lll_reduce(const LatticeBasis& lattice) { return lll_reduce(lattice, Real(kDefaultLllDelta)); }

LllResult lll_reduce(const LatticeBasis& lattice, const Real& delta) {
    if (!(delta > Real(0.25) && delta < 1)) fail(ErrorKind::InvalidInput, "LLL delta must lie in (1/4, 1)");
    const std::size_t n = lattice.dim();
    std::vector<Vector> b = columns_of(lattice.basis());
    IntMatrix u = IntMatrix::identity(n);
    GramSchmidt gs = gram_schmidt_columns(b);
    const Real half = Real(1) / 2;

    auto size_reduce = [&](std::size_t k, std::size_t j) {
        if (abs(gs.mu[k][j]) <= half) return;
        Real q = round(gs.mu[k][j]);
        if (abs(q) > Real(std::numeric_limits<std::int64_t>::max() / 4)) {
            fail(ErrorKind::BudgetExceeded, "integer coefficient overflow in LLL");
        }
        const std::int64_t qi = q.convert_to<std::int64_t>();
        for (std::size_t i = 0; i < n; ++i) b[k][i] -= q * b[j][i];
        for (std::size_t i = 0; i < n; ++i) u.at(i, k) = checked_mul_add(u(i, k), -qi, u(i, j));
        for (std::size_t i = 0; i <= j; ++i) gs.mu[k][i] -= q * gs.mu[j][i];
    };

    std::size_t k = 1;
    std::uint64_t iterations = 0;
    while (k < n) {
        if (++iterations > 10'000'000) fail(ErrorKind::BudgetExceeded, "LLL did not terminate");
        for (std::size_t j = k; j-- > 0;) size_reduce(k, j);
        if (gs.bstar2[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.bstar2[k - 1]) {
            ++k;
            continue;
        }
        std::swap(b[k], b[k - 1]);
        for (std::size_t i = 0; i < n; ++i) std::swap(u.at(i, k), u.at(i, k - 1));
        gs = gram_schmidt_columns(b);
        k = std::max<std::size_t>(k - 1, 1);
    }
    return LllResult{LatticeBasis(from_columns(b)), std::move(u)};
}

bool is_canonical(std::span<const std::int64_t> z) {
    for (auto c : z) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false;
}

bool precedes(const LatticeVector& a, const LatticeVector& b) {
    const Real scale = std::max(a.norm, b.norm);
    if (abs(a.norm - b.norm) > pow10_neg(30) * scale) return a.norm < b.norm;
    return std::lexicographical_compare(b.z.begin(), b.z.end(), a.z.begin(), a.z.end());
}

ShortVectorEnumerator::ShortVectorEnumerator(const LatticeBasis& lattice, EnumerationOptions options)
    : lattice_(lattice), reduction_(lll_reduce(lattice)), gs_(gram_schmidt(reduction_.reduced.basis())), options_(options) {
    const std::size_t n = lattice_.dim();
    mu_d_.assign(n * n, 0.0);
    bstar2_d_.assign(n, 0.0);
    double_safe_ = n <= 12;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bstar2_d_[i] = gs_.bstar2[i].convert_to<double>();
        lo = std::min(lo, bstar2_d_[i]);
        hi = std::max(hi, bstar2_d_[i]);
        for (std::size_t j = 0; j < i; ++j) mu_d_[i * n + j] = gs_.mu[i][j].convert_to<double>();
    }
    if (!(lo > 1e-200) || !(hi < 1e200) || hi / lo > 1e12) double_safe_ = false;
}

namespace {

// Depth-first Fincke-Pohst search over x in reduced coordinates with
// |sum x_i b'_i|^2 <= radius2. FT is the arithmetic used for pruning only;
// the leaf callback performs the exact test.
template <class FT, class MuAt, class Leaf>
void fincke_pohst(std::size_t n, MuAt mu, const std::vector<FT>& bstar2, const FT& radius2, std::uint64_t budget,
                  std::uint64_t& nodes, Leaf&& leaf) {
    IntVector x(n, 0);
    std::vector<FT> partial(n + 1, FT(0));
    std::vector<FT> center(n, FT(0));
    std::vector<std::int64_t> hi(n, 0);

    using std::ceil;
    using std::floor;
    using std::sqrt;

    auto bounds = [&](std::size_t k) -> bool {
        FT c = 0;
        for (std::size_t j = k + 1; j < n; ++j) c -= mu(j, k) * FT(x[j]);
        center[k] = c;
        FT rem = radius2 - partial[k + 1];
        if (rem < 0) return false;
        FT half = sqrt(rem / bstar2[k]);
        FT lo_f = ceil(c - half);
        FT hi_f = floor(c + half);
        if (lo_f > hi_f) return false;
        if (hi_f - lo_f > FT(budget)) throw BudgetError("enumeration node budget exceeded", 0);
        if constexpr (std::is_same_v<FT, double>) {
            x[k] = static_cast<std::int64_t>(lo_f);
            hi[k] = static_cast<std::int64_t>(hi_f);
        } else {
            x[k] = lo_f.template convert_to<std::int64_t>();
            hi[k] = hi_f.template convert_to<std::int64_t>();
        }
        return true;
    };

    std::size_t k = n - 1;
    if (!bounds(k)) return;
    while (true) {
        if (x[k] > hi[k]) {
            x[k] = 0;
            if (k == n - 1) return;
            ++k;
            ++x[k];
            continue;
        }
        if (++nodes > budget) throw BudgetError("enumeration node budget exceeded", 0);
        FT d = FT(x[k]) - center[k];
        FT p = partial[k + 1] + d * d * bstar2[k];
        if (p > radius2) {
            ++x[k];
            continue;
        }
        if (k == 0) {
            leaf(x);
            ++x[k];
            continue;
        }
        partial[k] = p;
        --k;
        if (!bounds(k)) {
            x[k] = 0;
            ++k;
            ++x[k];
        }
    }
}

}  // namespace

void ShortVectorEnumerator::for_each_below(const Real& rho, const std::function<void(const LatticeVector&)>& visit) const {
    if (!(rho > 0)) fail(ErrorKind::InvalidInput, "enumeration radius must be positive");
    const std::size_t n = lattice_.dim();
    const Real rho2 = rho * rho;
    std::uint64_t visited = 0;
    std::uint64_t nodes = 0;

    auto leaf = [&](const IntVector& x) {
        bool nonzero = std::any_of(x.begin(), x.end(), [](std::int64_t c) { return c != 0; });
        if (!nonzero) return;
        IntVector z = reduction_.transform.apply(x);
        if (!is_canonical(z)) return;
        Vector v = lattice_.point(z);
        Real n2 = norm2(v);
        if (!(n2 < rho2)) return;
        visit(LatticeVector{std::move(z), std::move(v), sqrt(n2)});
        ++visited;
    };

    try {
        const Real inflated = rho2 * (1 + pow10_neg(20)) * (1 + pow10_neg(20));
        Real min_b = *std::min_element(gs_.bstar2.begin(), gs_.bstar2.end());
        if (double_safe_ && inflated / min_b < Real(1e12)) {
            const double r2 = inflated.convert_to<double>() * (1 + 1e-9);
            auto mu = [&](std::size_t i, std::size_t j) { return mu_d_[i * n + j]; };
            fincke_pohst<double>(n, mu, bstar2_d_, r2, options_.node_budget, nodes, leaf);
        } else {
            auto mu = [&](std::size_t i, std::size_t j) -> const Real& { return gs_.mu[i][j]; };
            fincke_pohst<Real>(n, mu, gs_.bstar2, inflated, options_.node_budget, nodes, leaf);
        }
    } catch (const BudgetError& e) {
        throw BudgetError(std::string(e.what()) + " after " + std::to_string(visited) + " vectors", visited);
    }
}

ShortVectorSet ShortVectorEnumerator::below(const Real& rho) const {
    ShortVectorSet set{rho, {}};
    for_each_below(rho, [&](const LatticeVector& lv) { set.vectors.push_back(lv); });
    std::sort(set.vectors.begin(), set.vectors.end(), precedes);
    return set;
}

LatticeVector ShortVectorEnumerator::shortest() const {
    Real first = norm(reduction_.reduced.basis().column(0));
    Real radius = first * (1 + pow10_neg(20));
    std::optional<LatticeVector> best;
    for_each_below(radius, [&](const LatticeVector& lv) {
        if (!best || precedes(lv, *best)) best = lv;
    });
    if (!best) fail(ErrorKind::Degenerate, "no nonzero lattice vector found below first reduced basis norm");
    return *best;
}

ShortVectorSet enumerate_below(const LatticeBasis& lattice, const Real& rho, EnumerationOptions options) {
    if (!(rho > 0)) fail(ErrorKind::InvalidInput, "rho must be positive");
    return ShortVectorEnumerator(lattice, options).below(rho);
}

ShortestVector shortest_vector(const LatticeBasis& lattice, EnumerationOptions options) {
    LatticeVector v = ShortVectorEnumerator(lattice, options).shortest();
    Real lambda1 = v.norm;
    return ShortestVector{std::move(v), std::move(lambda1)};
}

bool IndependenceTracker::try_add(std::span<const std::int64_t> z) {
    std::vector<Rational> row(z.begin(), z.end());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::size_t p = pivots_[r];
        if (row[p] == 0) continue;
        Rational f = row[p] / rows_[r][p];
        for (std::size_t j = 0; j < n_; ++j) row[j] -= f * rows_[r][j];
    }
    for (std::size_t j = 0; j < n_; ++j) {
        if (row[j] != 0) {
            rows_.push_back(std::move(row));
            pivots_.push_back(j);
            return true;
        }
    }
    return false;
}

MinimaVector successive_minima(const LatticeBasis& lattice, EnumerationOptions options) {
    const std::size_t n = lattice.dim();
    ShortVectorEnumerator enumerator(lattice, options);
    const Matrix& reduced = enumerator.reduction().reduced.basis();
    Real longest = 0;
    for (std::size_t j = 0; j < n; ++j) longest = std::max(longest, norm(reduced.column(j)));
    // Every reduced basis vector lies strictly inside this radius, so n
    // independent vectors are guaranteed there.
    const Real cap = longest * (1 + pow10_neg(15));
    Real radius = std::min(cap, Real(2 * norm(reduced.column(0))));

    while (true) {
        ShortVectorSet set = enumerator.below(radius);
        IndependenceTracker tracker(n);
        MinimaVector result;
        for (const auto& lv : set.vectors) {
            if (tracker.try_add(lv.z)) {
                result.lambdas.push_back(lv.norm);
                result.witnesses.push_back(lv);
                if (tracker.rank() == n) return result;
            }
        }
        if (radius >= cap) fail(ErrorKind::Degenerate, "could not find n independent lattice vectors");
        radius = std::min(cap, Real(radius * 2));
    }
}

}  // namespace latcount
