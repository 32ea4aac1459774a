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

#include "nu.hpp"

#include <cstdint>
#include <random>

namespace latcount {

/// Exactly one entry of modulus 1 per row and column (within 1e-30), zeros
/// elsewhere.
bool is_signed_permutation(const Matrix& s);

/// A^T S A = R within 1e-25, R integral with det +-1, S a signed permutation.
bool verify_prop_conditions(const Matrix& a, const Matrix& s, const Matrix& r);

/// [[0, I_m], [-I_m, 0]].
Matrix symplectic_form(int m);

struct NuComparison {
    std::vector<Real> rho;
    std::vector<Real> nu_primal;
    std::vector<Real> nu_dual;
    std::vector<Real> abs_diff;
    Real max_abs_diff;
    std::size_t primal_flags = 0;
    std::size_t dual_flags = 0;
};

NuComparison nu_profile_compare(const LatticeBasis& lattice, std::span<const Real> grid, const NuOptions& options = {});

/// Uniform decimal in (-1, 1) with `digits` random digits, parsed exactly.
Real random_decimal(std::mt19937_64& engine, int digits = 50);

/// Unimodular lattice whose dual basis has a vanishing (n, n) entry while
/// the primal basis entries are generic random decimals.
LatticeBasis example31_build(int n, std::uint64_t seed);

/// Unimodular lattice with generic random entries (|det|^(-1/n) rescaled).
LatticeBasis random_unimodular(int n, std::mt19937_64& engine);

}  // namespace latcount
