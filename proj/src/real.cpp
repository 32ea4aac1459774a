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

#include "real.hpp"

#include <cctype>
#include <iomanip>
#include <limits>
#include <sstream>

namespace latcount {

void set_working_digits(unsigned digits) {
    if (digits < kMinDigits) {
        fail(ErrorKind::InvalidInput, "precision must be at least " + std::to_string(kMinDigits) + " digits");
    }
    Real::default_precision(digits);
}

unsigned working_digits() { return Real::default_precision(); }

namespace {
const bool kDefaultPrecisionInstalled = (Real::default_precision(kDefaultDigits), true);
}  // namespace

PrecisionScope::PrecisionScope(unsigned digits) : saved_(working_digits()) { set_working_digits(digits); }

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

std::optional<Rational> parse_rational(std::string_view text) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_rational(text.substr(0, slash));
        auto den = parse_rational(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return *num / *den;
    }

    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    int exponent = 0;
    bool seen_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --exponent;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) return std::nullopt;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return std::nullopt;
        ++i;
        std::string_view rest = text.substr(i);
        if (rest.empty()) return std::nullopt;
        int sign = 1;
        std::size_t j = 0;
        if (rest[0] == '+' || rest[0] == '-') {
            sign = rest[0] == '-' ? -1 : 1;
            j = 1;
        }
        if (j == rest.size()) return std::nullopt;
        long e = 0;
        for (; j < rest.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(rest[j]))) return std::nullopt;
            e = e * 10 + (rest[j] - '0');
            if (e > 100000) return std::nullopt;
        }
        exponent += static_cast<int>(sign * e);
    }

    // A leading zero would make the mpz string constructor read octal.
    const auto first = digits.find_first_not_of('0');
    BigInt mantissa(first == std::string::npos ? std::string("0") : digits.substr(first));
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(exponent)));
    Rational value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    return negative ? Rational(-value) : value;
}

Real parse_real(std::string_view text) {
    auto q = parse_rational(text);
    if (!q) fail(ErrorKind::InvalidInput, "not a decimal number: '" + std::string(text) + "'");
    return to_real(*q);
}

Real to_real(const Rational& q) {
    Real num(boost::multiprecision::numerator(q));
    Real den(boost::multiprecision::denominator(q));
    return num / den;
}

Real to_real(const BigInt& z) { return Real(z); }

std::string format_real(const Real& x) { return format_real(x, working_digits()); }

std::string format_real(const Real& x, unsigned digits) {
    if (x == 0) return "0";
    std::ostringstream os;
    os << std::scientific << std::setprecision(static_cast<int>(digits) - 1) << x;
    return os.str();
}

Real pow10_neg(int k) { return boost::multiprecision::pow(Real(10), -k); }

std::int64_t floor_to_int64(const Real& x) {
    Real f = floor(x);
    if (f > Real(std::numeric_limits<std::int64_t>::max() / 2) || f < Real(std::numeric_limits<std::int64_t>::min() / 2)) {
        fail(ErrorKind::BudgetExceeded, "integer coordinate out of 64-bit range");
    }
    return f.convert_to<std::int64_t>();
}

std::int64_t ceil_to_int64(const Real& x) {
    Real c = ceil(x);
    if (c > Real(std::numeric_limits<std::int64_t>::max() / 2) || c < Real(std::numeric_limits<std::int64_t>::min() / 2)) {
        fail(ErrorKind::BudgetExceeded, "integer coordinate out of 64-bit range");
    }
    return c.convert_to<std::int64_t>();
}

}  // namespace latcount
