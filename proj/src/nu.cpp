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

#include "nu.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace latcount {

HermiteValue hermite_constant(int n) {
    if (n < 2) fail(ErrorKind::InvalidInput, "Hermite constant needs n >= 2");
    // gamma_n^n for the dimensions where it is known.
    static const int num[] = {0, 0, 4, 2, 4, 8, 64, 64, 256};
    static const int den[] = {1, 1, 3, 1, 1, 1, 3, 1, 1};
    if (n <= 8) {
        Real power = Real(num[n]) / den[n];
        return {pow(power, 1 / Real(n)), true};
    }
    return {pow(Real(4) / 3, Real(n - 1) / 2), false};
}

Real hermite_threshold(int n) { return sqrt(hermite_constant(n).value); }

Real star(const Real& x, int n) {
    Real g = hermite_constant(n).value;
    return x > g ? x : g;
}

bool has_zero_coordinate(std::span<const Real> x, const Real& length) {
    const Real cut = pow10_neg(30) * length;
    for (const auto& xi : x)
        if (abs(xi) < cut) return true;
    return false;
}

Real coordinate_product(std::span<const Real> x, const Real& length) {
    if (has_zero_coordinate(x, length)) return Real(0);
    Real p = 1;
    for (const auto& xi : x) p *= abs(xi);
    return p;
}

namespace {

// Above this many expected vectors the box cover is cheaper. The cover
// needs O(log(rho)^(n-1)) boxes, which only pays off quickly in the plane.
double exhaustive_limit(std::size_t n) { return n == 2 ? 2e5 : 5e6; }
constexpr double kSeedTarget = 2e4;

struct Best {
    bool set = false;
    Real product;
    LatticeVector vector;

    void offer(const Real& p, const LatticeVector& v) {
        if (!set) {
            set = true;
            product = p;
            vector = v;
            return;
        }
        const Real scale = p > product ? p : product;
        const Real gap = p - product;
        if (abs(gap) <= pow10_neg(30) * scale) {
            if (precedes(v, vector)) {
                product = p;
                vector = v;
            }
        } else if (gap < 0) {
            product = p;
            vector = v;
        }
    }
};

// Unit ball volume in dimension n.
double ball_volume(std::size_t n) {
    const double h = static_cast<double>(n) / 2;
    return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h + 1));
}

// Expected number of canonical vectors of norm below rho.
double expected_count(const LatticeBasis& lattice, const Real& rho) {
    const std::size_t n = lattice.dim();
    const double log_count = std::log(ball_volume(n)) + static_cast<double>(n) * static_cast<double>(log(rho)) -
                             static_cast<double>(log(abs(lattice.det()))) - std::log(2.0);
    return log_count > 700 ? HUGE_VAL : std::exp(log_count);
}

// Radius whose ball holds about `target` canonical vectors.
Real radius_for_count(const LatticeBasis& lattice, double target) {
    const std::size_t n = lattice.dim();
    const double log_r = (std::log(2 * target) - std::log(ball_volume(n)) +
                          static_cast<double>(log(abs(lattice.det())))) /
                         static_cast<double>(n);
    return Real(std::exp(log_r));
}

void check_radius(const LatticeBasis& lattice, const Real& rho) {
    if (!(rho > 0)) fail(ErrorKind::InvalidInput, "rho must be positive");
    if (lattice.unimodular() && rho <= hermite_threshold(static_cast<int>(lattice.dim())))
        fail(ErrorKind::InvalidInput, "rho below Hermite threshold: " + format_real(rho, 20));
}

NuResult finish(const Best& best, const Real& rho) {
    if (!best.set) fail(ErrorKind::InvalidInput, "no nonzero lattice vector below rho " + format_real(rho, 20));
    NuResult r;
    r.value = best.product;
    r.minimizer = best.vector;
    r.zero_coordinate = has_zero_coordinate(best.vector.v, best.vector.norm);
    return r;
}

Best exhaustive_best(const ShortVectorEnumerator& en, const Real& rho) {
    Best best;
    en.for_each_below(rho, [&](const LatticeVector& lv) { best.offer(coordinate_product(lv.v, lv.norm), lv); });
    return best;
}

// Every vector with |x_1 ... x_n| <= nu0 and |x| < rho has, for i < n,
// |x_i| either at most 2^kmin or inside a dyadic shell (2^(k-1), 2^k]. For
// each choice of shells, the remaining coordinate is bounded by
// nu0 / prod 2^(k_i - 1), so a symmetric box per choice covers the set.
void hyperbolic_pass(const LatticeBasis& lattice, const Real& rho, const Real& nu0, const NuOptions& options,
                     Best& best) {
    const std::size_t n = lattice.dim();
    const Real rho2 = rho * rho;
    const int kmax = static_cast<int>(ceil(log2(rho)).convert_to<long>());
    const Real floor_arg = pow10_neg(3) * abs(lattice.det()) / pow(rho, Real(n - 1));
    const int kmin = std::min(kmax, static_cast<int>(floor(log2(floor_arg)).convert_to<long>()));
    const Real widen = 1 + pow10_neg(20);

    std::vector<int> k(n - 1, kmin);
    while (true) {
        Vector side(n);
        bool touches_axis = false;
        Real shell = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            Real s = ldexp(Real(1), k[i]);
            side[i] = s < rho ? s : rho;
            if (k[i] == kmin) touches_axis = true;
            shell *= ldexp(Real(1), k[i] - 1);
        }
        if (touches_axis) {
            side[n - 1] = rho;
        } else {
            Real s = nu0 / shell * widen;
            side[n - 1] = s < rho ? s : rho;
        }

        if (side[n - 1] > 0) {
            Vector t(n);
            Vector y(n);
            for (std::size_t i = 0; i < n; ++i) {
                t[i] = 2 * side[i];
                y[i] = -side[i];
            }
            for_each_point_in_box(
                lattice, AlignedBox{std::move(t), std::move(y)},
                [&](const BoxPoint& p) {
                    if (!is_canonical(p.z)) return;
                    if (std::all_of(p.z.begin(), p.z.end(), [](std::int64_t c) { return c == 0; })) return;
                    Real len2 = norm2(p.w);
                    if (!(len2 < rho2)) return;
                    Real len = sqrt(len2);
                    best.offer(coordinate_product(p.w, len), LatticeVector{p.z, p.w, len});
                },
                options.count);
        }

        std::size_t i = 0;
        while (i < k.size() && k[i] == kmax) k[i++] = kmin;
        if (i == k.size()) break;
        ++k[i];
    }
}

}  // namespace

NuResult nu(const LatticeBasis& lattice, const Real& rho, const NuOptions& options) {
    check_radius(lattice, rho);
    ShortVectorEnumerator en(lattice, options.enumeration);

    NuRoute route = options.route;
    if (route == NuRoute::Automatic)
        route = expected_count(lattice, rho) <= exhaustive_limit(lattice.dim()) ? NuRoute::Exhaustive : NuRoute::Hyperbolic;
    if (route == NuRoute::Exhaustive) return finish(exhaustive_best(en, rho), rho);

    const LatticeVector shortest = en.shortest();
    if (!(shortest.norm < rho)) fail(ErrorKind::InvalidInput, "no nonzero lattice vector below rho " + format_real(rho, 20));
    Real rho0 = radius_for_count(lattice, kSeedTarget);
    const Real floor0 = shortest.norm * (1 + pow10_neg(6));
    if (rho0 < floor0) rho0 = floor0;
    if (rho0 > rho) rho0 = rho;
    Best best = exhaustive_best(en, rho0);
    if (!best.set) best.offer(coordinate_product(shortest.v, shortest.norm), shortest);
    // A zero product is already minimal, and every zero-product vector that
    // precedes the seed minimizer is shorter, hence already seen.
    if (best.product > 0) {
        const Real nu0 = best.product;
        hyperbolic_pass(lattice, rho, nu0, options, best);
    }
    return finish(best, rho);
}

std::optional<std::size_t> NuProfile::first_flag() const {
    for (std::size_t i = 0; i < zero_flags.size(); ++i)
        if (zero_flags[i]) return i;
    return std::nullopt;
}

NuProfile nu_profile(const LatticeBasis& lattice, std::span<const Real> grid, const NuOptions& options) {
    NuProfile prof;
    if (grid.empty()) return prof;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        check_radius(lattice, grid[i]);
        if (i > 0 && !(grid[i] > grid[i - 1])) fail(ErrorKind::InvalidInput, "rho grid must be strictly increasing");
    }

    const Real& top = grid.back();
    const bool single_pass = options.route != NuRoute::Hyperbolic &&
                             (options.route == NuRoute::Exhaustive || expected_count(lattice, top) <= exhaustive_limit(lattice.dim()));
    std::vector<Best> bests(grid.size());
    if (single_pass) {
        ShortVectorEnumerator en(lattice, options.enumeration);
        en.for_each_below(top, [&](const LatticeVector& lv) {
            // First grid radius strictly above the norm.
            auto it = std::upper_bound(grid.begin(), grid.end(), lv.norm);
            if (it == grid.end()) return;
            bests[static_cast<std::size_t>(it - grid.begin())].offer(coordinate_product(lv.v, lv.norm), lv);
        });
        for (std::size_t i = 1; i < bests.size(); ++i) {
            if (bests[i - 1].set) {
                Best merged = bests[i - 1];
                if (bests[i].set) merged.offer(bests[i].product, bests[i].vector);
                bests[i] = std::move(merged);
            }
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            NuResult r = finish(bests[i], grid[i]);
            prof.rho.push_back(grid[i]);
            prof.values.push_back(r.value);
            prof.minimizers.push_back(r.minimizer);
            prof.zero_flags.push_back(r.zero_coordinate);
        }
        return prof;
    }

    for (const auto& rho : grid) {
        NuResult r = nu(lattice, rho, options);
        prof.rho.push_back(rho);
        prof.values.push_back(r.value);
        prof.minimizers.push_back(r.minimizer);
        prof.zero_flags.push_back(r.zero_coordinate);
    }
    return prof;
}

std::vector<Real> probe_grid(int n, const Real& rho_max, std::size_t points) {
    const Real start = Real("1.01") * hermite_threshold(n);
    if (points == 0) fail(ErrorKind::InvalidInput, "probe grid needs at least one point");
    if (!(rho_max > start)) fail(ErrorKind::InvalidInput, "rho_max must exceed 1.01 gamma_n^(1/2)");
    std::vector<Real> grid;
    if (points == 1) {
        grid.push_back(rho_max);
        return grid;
    }
    const Real ratio = pow(rho_max / start, 1 / Real(points - 1));
    Real r = start;
    for (std::size_t i = 0; i < points; ++i) {
        grid.push_back(i + 1 == points ? rho_max : r);
        r *= ratio;
    }
    return grid;
}

NuProfile weak_admissibility_probe(const LatticeBasis& lattice, const Real& rho_max, std::size_t points,
                                   const NuOptions& options) {
    if (!lattice.unimodular()) fail(ErrorKind::InvalidInput, "weak admissibility probe needs a unimodular lattice");
    auto grid = probe_grid(static_cast<int>(lattice.dim()), rho_max, points);
    return nu_profile(lattice, grid, options);
}

DeltaFamily delta_set(int n, const Real& r) {
    if (n < 2) fail(ErrorKind::InvalidInput, "delta family needs n >= 2");
    if (!(r > 0)) fail(ErrorKind::InvalidInput, "delta family radius must be positive");
    DeltaFamily fam{r, {}};
    const Real r2 = r * r;
    const int bound = static_cast<int>(ceil(r).convert_to<long>());
    std::vector<int> m(static_cast<std::size_t>(n), 0);

    auto rec = [&](auto&& self, std::size_t i, long partial_sq, long partial_sum) -> void {
        if (i + 1 == m.size()) {
            const long last = -partial_sum;
            if (Real(partial_sq + last * last) < r2) {
                m[i] = static_cast<int>(last);
                fam.exponents.push_back(m);
            }
            return;
        }
        for (int v = -bound; v <= bound; ++v) {
            const long sq = partial_sq + static_cast<long>(v) * v;
            if (!(Real(sq) < r2)) continue;
            m[i] = v;
            self(self, i + 1, sq, partial_sum + v);
        }
    };
    rec(rec, 0, 0, 0);
    return fam;
}

SSumResult s_sum(const LatticeBasis& lattice, const Real& r, const EnumerationOptions& options, unsigned workers) {
    const int n = static_cast<int>(lattice.dim());
    DeltaFamily fam = delta_set(n, r);
    const unsigned digits = working_digits();

    auto terms = parallel_map(fam.exponents.size(), workers, [&](std::size_t idx) {
        PrecisionScope scope(digits);
        const auto& m = fam.exponents[idx];
        Vector d(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) d[i] = ldexp(Real(1), m[i]);
        try {
            LatticeBasis scaled(Matrix::diagonal(d) * lattice.basis());
            Real lam = shortest_vector(scaled, options).lambda1;
            return Real(pow(lam, Real(-n)));
        } catch (const BudgetError& e) {
            std::string label = "(";
            for (std::size_t i = 0; i < m.size(); ++i) label += (i ? "," : "") + std::to_string(m[i]);
            label += ")";
            throw BudgetError("S-sum term m=" + label + ": " + e.what(), e.partial());
        }
    });

    SSumResult res;
    res.value = 0;
    res.members = terms.size();
    res.max_term = 0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        res.value += terms[i];
        if (i == 0 || terms[i] > res.max_term) {
            res.max_term = terms[i];
            res.max_term_exponents = fam.exponents[i];
        }
    }
    return res;
}

}  // namespace latcount
