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

#include "box.hpp"
#include "reduction.hpp"

#include <optional>
#include <span>
#include <vector>

namespace latcount {

struct HermiteValue {
    Real value;
    bool exact;  // false: the (4/3)^((n-1)/2) upper bound
};

/// gamma_n. Exact for n <= 8, the classical upper bound beyond.
HermiteValue hermite_constant(int n);

/// gamma_n^(1/2); nu is only defined strictly above it.
Real hermite_threshold(int n);

/// max(gamma_n, x).
Real star(const Real& x, int n);

/// True when some |x_i| < 1e-30 |x|.
bool has_zero_coordinate(std::span<const Real> x, const Real& length);

/// |x_1 ... x_n|, taken as exactly 0 when has_zero_coordinate holds.
Real coordinate_product(std::span<const Real> x, const Real& length);

enum class NuRoute {
    Automatic,
    Exhaustive,  // every vector below rho
    Hyperbolic,  // dyadic box cover of {|x_1 ... x_n| < nu_0}
};

struct NuOptions {
    EnumerationOptions enumeration;
    CountOptions count;
    NuRoute route = NuRoute::Automatic;
};

struct NuResult {
    Real value;
    LatticeVector minimizer;
    bool zero_coordinate = false;
};

/// min |x_1 ... x_n| over lattice vectors with 0 < |x| < rho.
///
/// For unimodular lattices rho must exceed gamma_n^(1/2). Ties in the
/// product (1e-30 relative) are broken by precedes().
NuResult nu(const LatticeBasis& lattice, const Real& rho, const NuOptions& options = {});

struct NuProfile {
    std::vector<Real> rho;
    std::vector<Real> values;
    std::vector<LatticeVector> minimizers;
    std::vector<bool> zero_flags;

    std::optional<std::size_t> first_flag() const;
};

/// nu at every radius of an ascending grid.
NuProfile nu_profile(const LatticeBasis& lattice, std::span<const Real> grid, const NuOptions& options = {});

/// Geometric grid of `points` radii from 1.01 gamma_n^(1/2) to rho_max.
std::vector<Real> probe_grid(int n, const Real& rho_max, std::size_t points);

/// nu profile on probe_grid; zero flags refute weak admissibility.
NuProfile weak_admissibility_probe(const LatticeBasis& lattice, const Real& rho_max, std::size_t points,
                                   const NuOptions& options = {});

struct DeltaFamily {
    Real r;
    std::vector<std::vector<int>> exponents;  // lexicographic order
};

/// All m in Z^n with sum m_i = 0 and |m| < r.
DeltaFamily delta_set(int n, const Real& r);

struct SSumResult {
    Real value;
    std::size_t members = 0;
    Real max_term;
    std::vector<int> max_term_exponents;
};

/// Sum over the delta family of lambda_1(delta L)^(-n).
SSumResult s_sum(const LatticeBasis& lattice, const Real& r, const EnumerationOptions& options = {},
                 unsigned workers = 1);

}  // namespace latcount
