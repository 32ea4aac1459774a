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

#pragma once

#include "matrix.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace latcount {

/// Integral n x n matrix, row-major.
struct IntMatrix {
    std::size_t n = 0;
    std::vector<std::int64_t> a;

    static IntMatrix identity(std::size_t n);
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
    std::int64_t& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    /// Throws BudgetExceeded on 64-bit overflow.
    IntVector apply(std::span<const std::int64_t> x) const;
    Matrix to_matrix() const { return Matrix::from_int(n, a); }
};

struct LllResult {
    LatticeBasis reduced;  // == basis * transform
    IntMatrix transform;   // unimodular, integral
};

inline constexpr double kDefaultLllDelta = 0.99;
inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// LLL on the columns. Requires 1/4 < delta < 1.
LllResult lll_reduce(const LatticeBasis& lattice, const Real& delta);
LllResult lll_reduce(const LatticeBasis& lattice);

struct GramSchmidt {
    std::vector<Vector> mu;  // mu[i][j] for j < i
    Vector bstar2;           // |b*_i|^2
};

GramSchmidt gram_schmidt(const Matrix& basis);

/// Lattice vector with integer coordinates z in the caller's basis.
struct LatticeVector {
    IntVector z;
    Vector v;
    Real norm;
};

/// Strict order used for every tie-break: shorter first; norms equal to
/// within 1e-30 relative fall back to lexicographically larger z first.
bool precedes(const LatticeVector& a, const LatticeVector& b);

/// Canonical representative of +-z: first nonzero coordinate positive.
bool is_canonical(std::span<const std::int64_t> z);

struct ShortVectorSet {
    Real rho;
    std::vector<LatticeVector> vectors;  // sorted by precedes()
};

struct MinimaVector {
    std::vector<Real> lambdas;
    std::vector<LatticeVector> witnesses;
};

struct EnumerationOptions {
    std::uint64_t node_budget = kDefaultNodeBudget;
};

/// Fincke-Pohst enumeration over an LLL(0.99)-reduced copy of the basis.
/// Reusable across radii.
class ShortVectorEnumerator {
public:
    explicit ShortVectorEnumerator(const LatticeBasis& lattice, EnumerationOptions options = {});

    const LatticeBasis& lattice() const noexcept { return lattice_; }
    const LllResult& reduction() const noexcept { return reduction_; }

    /// Calls visit for every canonical nonzero vector with |v| < rho.
    /// Throws BudgetError with the number of vectors already visited.
    void for_each_below(const Real& rho, const std::function<void(const LatticeVector&)>& visit) const;

    ShortVectorSet below(const Real& rho) const;
    LatticeVector shortest() const;

private:
    LatticeBasis lattice_;
    LllResult reduction_;
    GramSchmidt gs_;
    std::vector<double> mu_d_;
    std::vector<double> bstar2_d_;
    bool double_safe_ = false;
    EnumerationOptions options_;
};

ShortVectorSet enumerate_below(const LatticeBasis& lattice, const Real& rho, EnumerationOptions options = {});

struct ShortestVector {
    LatticeVector vector;
    Real lambda1;
};

ShortestVector shortest_vector(const LatticeBasis& lattice, EnumerationOptions options = {});

MinimaVector successive_minima(const LatticeBasis& lattice, EnumerationOptions options = {});

/// Exact rank test for integer vectors.
class IndependenceTracker {
public:
    explicit IndependenceTracker(std::size_t n) : n_(n) {}
    /// Adds z when independent of everything added so far.
    bool try_add(std::span<const std::int64_t> z);
    std::size_t rank() const noexcept { return rows_.size(); }

private:
    std::size_t n_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<std::size_t> pivots_;
};

}  // namespace latcount
