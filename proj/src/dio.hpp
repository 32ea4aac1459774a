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

#include "bounds.hpp"

#include <string>
#include <string_view>

namespace latcount {

/// An irrational alpha in (0, 1): either (a + b sqrt c) / d with c not a
/// perfect square, or a decimal literal.
struct IrrationalSpec {
    enum class Kind { Surd, Decimal };
    Kind kind = Kind::Surd;
    BigInt a, b, c, d;    // surd parameters
    Rational literal;     // decimal value
    int literal_digits = 0;  // significant digits of the literal
    std::string text;
    Real value;
};

/// "surd:a,b,c,d" or "dec:<digits>".
IrrationalSpec parse_irrational(std::string_view text);

struct ContinuedFraction {
    std::vector<BigInt> quotients;  // a_0 = 0, a_1, a_2, ...
    std::vector<BigInt> p;          // convergent numerators p_0, p_1, ...
    std::vector<BigInt> q;          // convergent denominators q_0 = 1, q_1 = a_1, ...
    bool terminated = false;        // the literal is rational and the expansion ended
};

/// The first k+1 partial quotients a_0..a_k.
///
/// Surds are expanded exactly. Decimal literals are expanded exactly as the
/// rational they spell, and a convergent is only emitted while
/// log10 q_i + log10 q_(i+1) < digits - 10, where digits is the literal's
/// digit count capped by the working precision; past that the convergents
/// of the literal need not be convergents of the number it approximates,
/// and PrecisionExhausted is raised.
ContinuedFraction continued_fraction(const IrrationalSpec& alpha, std::size_t k);

struct PhiBound {
    enum class Kind { Constant, Step };
    Kind kind = Kind::Constant;
    Real constant;                  // Constant: phi = c for every q
    std::vector<BigInt> step_q;     // Step: phi(q) = step_value[i] on [step_q[i], step_q[i+1])
    std::vector<Real> step_value;
    BigInt q_max;                   // evidence range
    Real observed_min;              // min of q_i dist(q_i alpha, Z) over scanned convergents
    BigInt observed_argmin;
    Real tail_bound;                // lower bound over all convergents (surds only)
    bool certified_all_q = false;   // the constant holds for every q >= 1
};

/// phi from the convergents of alpha with q_i <= q_max.
PhiBound phi_from_cf(const IrrationalSpec& alpha, const BigInt& q_max);

/// phi evaluated at q. Step bounds raise InvalidInput beyond q_max, as do
/// constants that are not certified for all q.
Real phi_at(const PhiBound& phi, const Real& q);

/// Largest value <= x with two significant digits.
Real floor_two_digits(const Real& x);

/// #{(p, q) : 0 <= p + q alpha - y <= eps, 1 <= q <= t}.
std::uint64_t count_N(const Real& alpha, const Real& y, const Real& eps, const Real& t);

struct Application {
    LatticeBasis lattice;
    AlignedBox box;
};

/// A = alpha^(-1/2) [[1, alpha], [1, 2 alpha]] and
/// B = alpha^(-1/2) ([y, y + eps] x [y, y + alpha t]). Requires eps t > 4 and
/// 0 < eps < sqrt(alpha).
Application build_application(const Real& alpha, const Real& y, const Real& eps, const Real& t);

struct DioCountResult {
    std::uint64_t N = 0;
    Real volume;  // eps t
    Real abs_error;
    Real E;
    Real E_prime;
    Real bound;
};

DioCountResult corollary_bound(const Real& alpha, const Real& y, const Real& eps, const Real& t, const PhiBound& phi);

struct Lemma41Row {
    Real rho;
    Real nu_primal;
    Real nu_dual;
    Real lower;  // phi(4 rho / sqrt alpha) / 4
};

struct Lemma41Check {
    std::vector<Lemma41Row> rows;
    Real max_equality_gap;
    Real worst_margin;  // min over rows of nu_primal - lower
    bool passed = false;
};

Lemma41Check lemma41_check(const Real& alpha, const PhiBound& phi, std::span<const Real> grid,
                           const NuOptions& options = {});

struct SweepRow {
    Real t;
    Real eps;
    DioCountResult result;
    std::uint64_t box_count = 0;
    std::int64_t cross_diff = 0;  // N - #(L cap B)
    Real ln_volume;
};

/// One row per t, sorted by t, evaluated on a bounded worker pool.
std::vector<SweepRow> dio_sweep(const Real& alpha, const Real& y, const Real& eps, std::vector<Real> ts,
                                const PhiBound& phi, unsigned workers, const CountOptions& count = {});

}  // namespace latcount
