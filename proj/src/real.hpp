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

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latcount {

using Real = boost::multiprecision::mpfr_float;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline constexpr unsigned kDefaultDigits = 50;
inline constexpr unsigned kMinDigits = 30;

enum class ErrorKind {
    InvalidInput,       // malformed or out-of-domain arguments
    Degenerate,         // singular lattice, zero nu, not weakly admissible
    BudgetExceeded,     // enumeration/count cap hit
    PrecisionExhausted,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a node or candidate cap is reached. Carries how far the
/// computation got so callers never mistake a truncated result for a full one.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, std::uint64_t partial)
        : Error(ErrorKind::BudgetExceeded, what), partial_(partial) {}
    std::uint64_t partial() const noexcept { return partial_; }

private:
    std::uint64_t partial_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

// Working precision is the mpfr default precision, shared by every thread.
void set_working_digits(unsigned digits);
unsigned working_digits();

class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/// Exact value of a decimal literal ("-12.5e-3") or a fraction ("3/7").
std::optional<Rational> parse_rational(std::string_view text);

/// Decimal literal or fraction at working precision. Throws InvalidInput.
Real parse_real(std::string_view text);

Real to_real(const Rational& q);
Real to_real(const BigInt& z);

/// Full working-precision scientific notation; deterministic for a given
/// value and precision.
std::string format_real(const Real& x);
std::string format_real(const Real& x, unsigned digits);

/// 10^-k at working precision.
Real pow10_neg(int k);

std::int64_t floor_to_int64(const Real& x);
std::int64_t ceil_to_int64(const Real& x);

}  // namespace latcount
