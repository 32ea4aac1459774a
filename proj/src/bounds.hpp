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
#include "nu.hpp"

namespace latcount {

/// Every intermediate of the inhomogeneous counting bound
///   |#(L cap B) - vol B| << (vol^(1-1/n)/sqrt(rho) + R^(n-1)/nu(D, 2^R T)) / nu(D, T*)
/// with D the dual lattice and R = n^2 + ln(rho^n / nu(D, rho T)).
struct BoundReport {
    std::uint64_t count = 0;
    std::uint64_t boundary_points = 0;
    Real volume;
    Real abs_error;
    Real T;
    Real T_star;
    Real rho;
    Real rho_T;
    Real nu_rhoT;
    Real R;
    Real two_R_T;
    Real nu_Tstar;
    Real nu_2RT;
    Real term_volume;
    Real term_remainder;
    Real rhs_total;
};

BoundReport skriganov_bound_inhomogeneous(const LatticeBasis& lattice, const AlignedBox& box, const Real& rho,
                                          const NuOptions& options = {});

/// Every intermediate of the homogeneous bound for the dilate tB of a
/// volume-one box:
///   |#(L cap tB) - t^n| << (|dB| lambda_n)^n (t^(n-1) rho^(-1/2) + S(D, r))
/// with r = n^2 + ln(rho^n / nu(D, rho)).
struct HomogeneousBoundReport {
    std::uint64_t count = 0;
    std::uint64_t boundary_points = 0;
    Real t;
    Real volume;  // t^n
    Real abs_error;
    Real rho;
    Real surface;
    Real lambda_n;
    Real nu_rho;
    Real r;
    Real s_sum;
    std::size_t s_members = 0;
    Real rhs_total;
};

HomogeneousBoundReport skriganov_bound_homogeneous(const LatticeBasis& lattice, const AlignedBox& unit_box,
                                                   const Real& t, const Real& rho, const NuOptions& options = {},
                                                   unsigned workers = 1);

/// 2 sum_i prod_{j != i} t_j.
Real surface_area(const AlignedBox& box);

/// max(vol^(2 - 2/n), 1.01 gamma_n^(1/2)).
Real default_rho(const AlignedBox& box);

}  // namespace latcount
