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

#include "dio.hpp"

#include "dual_compare.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace latcount {

namespace {

using boost::multiprecision::sqrt;

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt parse_bigint(std::string_view s) {
    if (s.empty()) fail(ErrorKind::InvalidInput, "empty integer in surd");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail(ErrorKind::InvalidInput, "malformed integer in surd: " + std::string(s));
    for (std::size_t j = i; j < s.size(); ++j)
        if (s[j] < '0' || s[j] > '9') fail(ErrorKind::InvalidInput, "malformed integer in surd: " + std::string(s));
    const bool negative = s[0] == '-';
    const auto first = s.find_first_not_of('0', i);
    BigInt v(first == std::string_view::npos ? std::string("0") : std::string(s.substr(first)));
    return negative ? BigInt(-v) : v;
}

// x = (P + sqrt D) / Q with D not a perfect square and Q | D - P^2.
struct QuadraticState {
    BigInt P, Q, D;

    BigInt floor() const {
        const BigInt r = sqrt(D);
        if (Q > 0) return floor_div(P + r, Q);
        return floor_div(-P - r - 1, -Q);
    }
    Real value() const { return (to_real(P) + boost::multiprecision::sqrt(to_real(D))) / to_real(Q); }
    // Replaces x by 1 / (x - floor x), returning floor x.
    BigInt step() {
        BigInt a = floor();
        P = a * Q - P;
        Q = (D - P * P) / Q;
        return a;
    }
};

QuadraticState surd_state(const IrrationalSpec& s) {
    const int sign = s.b > 0 ? 1 : -1;
    QuadraticState st{s.a * sign, s.d * sign, s.b * s.b * s.c};
    if ((st.D - st.P * st.P) % st.Q != 0) {
        const BigInt aq = abs(st.Q);
        st.P *= aq;
        st.D *= st.Q * st.Q;
        st.Q *= aq;
    }
    return st;
}

int significant_digits(std::string_view lit) {
    int count = 0;
    bool leading = true;
    for (char ch : lit) {
        if (ch == 'e' || ch == 'E') break;
        if (ch < '0' || ch > '9') continue;
        if (leading && ch == '0') continue;
        leading = false;
        ++count;
    }
    return count;
}

Real log10_of(const BigInt& v) { return log10(to_real(v)); }

void check_assumptions(const Real& alpha, const Real& eps, const Real& t) {
    if (!(alpha > 0 && alpha < 1)) fail(ErrorKind::InvalidInput, "alpha must lie in (0, 1)");
    if (!(eps > 0 && eps < sqrt(alpha)))
        fail(ErrorKind::InvalidInput, "assumption 0 < ε < √α violated (eps = " + format_real(eps, 20) + ")");
    if (!(eps * t > 4)) fail(ErrorKind::InvalidInput, "assumption εt > 4 violated (eps*t = " + format_real(eps * t, 20) + ")");
}

Matrix application_matrix(const Real& alpha) {
    const Real s = 1 / sqrt(alpha);
    return Matrix(2, std::vector<Real>{s, s * alpha, s, 2 * s * alpha});
}

}  // namespace

IrrationalSpec parse_irrational(std::string_view text) {
    IrrationalSpec spec;
    spec.text = std::string(text);
    if (text.starts_with("surd:")) {
        spec.kind = IrrationalSpec::Kind::Surd;
        std::vector<std::string_view> parts;
        std::string_view rest = text.substr(5);
        while (true) {
            auto comma = rest.find(',');
            parts.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (parts.size() != 4) fail(ErrorKind::InvalidInput, "surd needs four integers a,b,c,d");
        spec.a = parse_bigint(parts[0]);
        spec.b = parse_bigint(parts[1]);
        spec.c = parse_bigint(parts[2]);
        spec.d = parse_bigint(parts[3]);
        if (spec.d == 0) fail(ErrorKind::InvalidInput, "surd denominator is zero");
        if (spec.b == 0) fail(ErrorKind::InvalidInput, "surd coefficient b is zero, so alpha is rational");
        if (spec.c <= 0) fail(ErrorKind::InvalidInput, "surd radicand must be positive");
        const BigInt r = sqrt(spec.c);
        if (r * r == spec.c) fail(ErrorKind::InvalidInput, "surd radicand is a perfect square, so alpha is rational");
        if (surd_state(spec).floor() != 0) fail(ErrorKind::InvalidInput, "alpha must lie in (0, 1)");
        spec.value = (to_real(spec.a) + to_real(spec.b) * sqrt(to_real(spec.c))) / to_real(spec.d);
        return spec;
    }
    if (text.starts_with("dec:")) {
        spec.kind = IrrationalSpec::Kind::Decimal;
        auto lit = text.substr(4);
        auto q = parse_rational(lit);
        if (!q || lit.find('/') != std::string_view::npos)
            fail(ErrorKind::InvalidInput, "malformed decimal literal: " + std::string(lit));
        if (!(*q > 0 && *q < 1)) fail(ErrorKind::InvalidInput, "alpha must lie in (0, 1)");
        spec.literal = *q;
        spec.literal_digits = significant_digits(lit);
        spec.value = to_real(*q);
        return spec;
    }
    fail(ErrorKind::InvalidInput, "alpha must be given as surd:a,b,c,d or dec:<digits>");
}

ContinuedFraction continued_fraction(const IrrationalSpec& alpha, std::size_t k) {
    ContinuedFraction cf;
    BigInt p2 = 0, p1 = 1, q2 = 1, q1 = 0;
    auto push = [&](const BigInt& a) {
        BigInt p = a * p1 + p2;
        BigInt q = a * q1 + q2;
        cf.quotients.push_back(a);
        cf.p.push_back(p);
        cf.q.push_back(q);
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
    };

    if (alpha.kind == IrrationalSpec::Kind::Surd) {
        QuadraticState st = surd_state(alpha);
        for (std::size_t i = 0; i <= k; ++i) push(st.step());
        return cf;
    }

    const int digits = std::min<int>(alpha.literal_digits, static_cast<int>(working_digits()));
    BigInt num = numerator(alpha.literal);
    BigInt den = denominator(alpha.literal);
    for (std::size_t i = 0; i <= k + 1; ++i) {
        if (den == 0) {
            cf.terminated = true;
            break;
        }
        BigInt a = floor_div(num, den);
        BigInt r = num - a * den;
        num = den;
        den = r;
        push(a);
    }
    // Guard each reported convergent by its successor's denominator.
    const std::size_t reported = std::min(cf.q.size(), k + 1);
    for (std::size_t i = 0; i < reported; ++i) {
        if (i + 1 >= cf.q.size()) break;
        if (log10_of(cf.q[i]) + log10_of(cf.q[i + 1]) >= Real(digits - 10))
            fail(ErrorKind::PrecisionExhausted, "precision exhausted at convergent " + std::to_string(i));
    }
    if (cf.q.size() > reported) {
        cf.quotients.resize(reported);
        cf.p.resize(reported);
        cf.q.resize(reported);
    }
    return cf;
}

Real floor_two_digits(const Real& x) {
    if (!(x > 0)) fail(ErrorKind::InvalidInput, "two-digit floor needs a positive value");
    long e = floor(log10(x)).convert_to<long>();
    Real scaled = x * pow(Real(10), Real(1 - e));
    // Guard the log10 estimate against being one off.
    if (scaled >= 100) {
        ++e;
        scaled /= 10;
    } else if (scaled < 10) {
        --e;
        scaled *= 10;
    }
    const long m = floor(scaled).convert_to<long>();
    return parse_real(std::to_string(m) + "e" + std::to_string(e - 1));
}

PhiBound phi_from_cf(const IrrationalSpec& alpha, const BigInt& q_max) {
    if (q_max < 1) fail(ErrorKind::InvalidInput, "q_max must be at least 1");
    PhiBound phi;
    phi.q_max = q_max;

    if (alpha.kind == IrrationalSpec::Kind::Surd) {
        phi.kind = PhiBound::Kind::Constant;
        QuadraticState st = surd_state(alpha);
        BigInt p2 = 0, p1 = 1, q2 = 1, q1 = 0;
        std::vector<BigInt> as;
        std::vector<Real> complete;  // complete quotients x_0, x_1, ...
        std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
        bool periodic = false;
        bool scanned = false;
        bool first = true;
        constexpr std::size_t kMaxSteps = 1'000'000;
        for (std::size_t i = 0; i < kMaxSteps && !(scanned && periodic); ++i) {
            if (!periodic && i >= 1) {
                auto key = std::make_pair(st.P, st.Q);
                if (seen.contains(key))
                    periodic = true;
                else
                    seen.emplace(std::move(key), i);
            }
            complete.push_back(st.value());
            BigInt a = st.step();
            as.push_back(a);
            BigInt p = a * p1 + p2;
            BigInt q = a * q1 + q2;
            p2 = p1;
            p1 = p;
            q2 = q1;
            q1 = q;
            if (scanned) continue;
            if (q > q_max) {
                scanned = true;
                continue;
            }
            // q_0 = 1 is handled below.
            if (i == 0) continue;
            Real term = to_real(q) * abs(to_real(q) * alpha.value - to_real(p));
            if (first || term < phi.observed_min) {
                phi.observed_min = term;
                phi.observed_argmin = q;
            }
            first = false;
        }
        // The q_0 = 1 convergent: dist(alpha, Z) = alpha when a_1 > 1.
        if (as.size() > 1 && as[1] > 1) {
            if (first || alpha.value < phi.observed_min) {
                phi.observed_min = alpha.value;
                phi.observed_argmin = 1;
            }
            first = false;
        }
        if (first) fail(ErrorKind::InvalidInput, "no convergent denominator within q_max");

        // For i >= 1, q_i |q_i alpha - p_i| = 1 / (x_(i+1) + q_(i-1)/q_i) >= 1 / (x_(i+1) + 1/a_i),
        // and the pairs (x_(i+1), a_i) repeat once the expansion is periodic.
        if (periodic) {
            Real tail;
            bool have = false;
            for (std::size_t i = 1; i + 1 < complete.size(); ++i) {
                Real term = 1 / (complete[i + 1] + 1 / to_real(as[i]));
                if (!have || term < tail) tail = term;
                have = true;
            }
            if (as[1] > 1 && alpha.value < tail) tail = alpha.value;
            phi.tail_bound = tail;
        } else {
            phi.tail_bound = 0;
        }
        phi.constant = floor_two_digits(phi.observed_min);
        phi.certified_all_q = periodic && phi.constant <= phi.tail_bound;
        return phi;
    }

    phi.kind = PhiBound::Kind::Step;
    // Extend until a denominator passes q_max; the guard raises if the
    // literal runs out of digits first.
    std::size_t k = 8;
    ContinuedFraction cf;
    while (true) {
        cf = continued_fraction(alpha, k);
        if (cf.q.back() > q_max) break;
        if (cf.terminated) fail(ErrorKind::InvalidInput, "alpha literal is rational with denominator within q_max");
        k *= 2;
    }
    const Rational& a = alpha.literal;
    bool first = true;
    for (std::size_t i = 0; i < cf.q.size() && cf.q[i] <= q_max; ++i) {
        if (i == 0 && cf.q.size() > 1 && cf.q[1] == 1) continue;
        Rational err = Rational(cf.q[i]) * a - Rational(cf.p[i]);
        if (err < 0) err = -err;
        Real term = to_real(Rational(cf.q[i]) * err);
        if (first || term < phi.observed_min) {
            phi.observed_min = term;
            phi.observed_argmin = cf.q[i];
        }
        first = false;
        phi.step_q.push_back(cf.q[i]);
        phi.step_value.push_back(floor_two_digits(phi.observed_min));
    }
    phi.constant = floor_two_digits(phi.observed_min);
    phi.tail_bound = 0;
    phi.certified_all_q = false;
    return phi;
}

Real phi_at(const PhiBound& phi, const Real& q) {
    if (phi.kind == PhiBound::Kind::Constant) {
        if (!phi.certified_all_q && q > to_real(phi.q_max))
            fail(ErrorKind::InvalidInput, "phi evaluated beyond its evidence range q_max = " + phi.q_max.str());
        return phi.constant;
    }
    if (q > to_real(phi.q_max))
        fail(ErrorKind::InvalidInput, "phi evaluated beyond its evidence range q_max = " + phi.q_max.str());
    Real value = phi.step_value.front();
    for (std::size_t i = 0; i < phi.step_q.size(); ++i) {
        if (to_real(phi.step_q[i]) <= q) value = phi.step_value[i];
    }
    return value;
}

std::uint64_t count_N(const Real& alpha, const Real& y, const Real& eps, const Real& t) {
    if (!(eps > 0 && t > 0)) fail(ErrorKind::InvalidInput, "eps and t must be positive");
    const std::int64_t qmax = floor_to_int64(t);
    std::uint64_t n = 0;
    for (std::int64_t q = 1; q <= qmax; ++q) {
        const Real lo = y - q * alpha;
        const Real hi = lo + eps;
        const Real c = floor(hi) - ceil(lo) + 1;
        if (c > 0) n += c.convert_to<std::uint64_t>();
    }
    return n;
}

Application build_application(const Real& alpha, const Real& y, const Real& eps, const Real& t) {
    check_assumptions(alpha, eps, t);
    const Real s = 1 / sqrt(alpha);
    LatticeBasis lattice(application_matrix(alpha));
    AlignedBox box{Vector{eps * s, alpha * t * s}, Vector{y * s, y * s}};
    return Application{std::move(lattice), std::move(box)};
}

DioCountResult corollary_bound(const Real& alpha, const Real& y, const Real& eps, const Real& t, const PhiBound& phi) {
    check_assumptions(alpha, eps, t);
    DioCountResult r;
    r.N = count_N(alpha, y, eps, t);
    r.volume = eps * t;
    r.abs_error = abs(Real(r.N) - r.volume);
    r.E = r.volume / phi_at(phi, 4 * t * sqrt(r.volume));
    r.E_prime = 168 * sqrt(eps * t * t * t) * r.E;
    const Real phi_e = phi_at(phi, r.E_prime);
    r.bound = log(r.E) / (phi_e * phi_e);
    return r;
}

Lemma41Check lemma41_check(const Real& alpha, const PhiBound& phi, std::span<const Real> grid, const NuOptions& options) {
    if (!(alpha > 0 && alpha < 1)) fail(ErrorKind::InvalidInput, "alpha must lie in (0, 1)");
    LatticeBasis lattice(application_matrix(alpha));
    NuComparison cmp = nu_profile_compare(lattice, grid, options);
    Lemma41Check out;
    out.max_equality_gap = cmp.max_abs_diff;
    out.passed = cmp.max_abs_diff <= pow10_neg(25);
    bool first = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Lemma41Row row{grid[i], cmp.nu_primal[i], cmp.nu_dual[i], phi_at(phi, 4 * grid[i] / sqrt(alpha)) / 4};
        Real margin = row.nu_primal - row.lower;
        if (first || margin < out.worst_margin) out.worst_margin = margin;
        first = false;
        if (margin < 0) out.passed = false;
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::vector<SweepRow> dio_sweep(const Real& alpha, const Real& y, const Real& eps, std::vector<Real> ts,
                                const PhiBound& phi, unsigned workers, const CountOptions& count) {
    std::sort(ts.begin(), ts.end());
    for (const auto& t : ts) check_assumptions(alpha, eps, t);
    const unsigned digits = working_digits();
    return parallel_map(ts.size(), workers, [&](std::size_t i) {
        PrecisionScope scope(digits);
        SweepRow row;
        row.t = ts[i];
        row.eps = eps;
        row.result = corollary_bound(alpha, y, eps, ts[i], phi);
        Application app = build_application(alpha, y, eps, ts[i]);
        row.box_count = count_points(app.lattice, app.box, count).count;
        row.cross_diff = static_cast<std::int64_t>(row.result.N) - static_cast<std::int64_t>(row.box_count);
        row.ln_volume = log(row.result.volume);
        return row;
    });
}

}  // namespace latcount
