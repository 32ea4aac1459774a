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

#include "box.hpp"

#include "reduction.hpp"

#include <algorithm>

namespace latcount {

AlignedBox make_box(Vector t, Vector y) {
    if (t.empty() || t.size() != y.size()) fail(ErrorKind::InvalidInput, "box side and translation dimensions differ");
    for (const auto& ti : t)
        if (!(ti > 0)) fail(ErrorKind::InvalidInput, "box side lengths must be positive");
    return AlignedBox{std::move(t), std::move(y)};
}

Real volume(const AlignedBox& box) {
    Real v = 1;
    for (const auto& ti : box.t) v *= ti;
    return v;
}

Real t_quantity(const AlignedBox& box) {
    const Real n(box.dim());
    Real geo = pow(volume(box), 1 / n);
    Real smallest = *std::min_element(box.t.begin(), box.t.end());
    Real t = geo / smallest;
    return t < 1 ? Real(1) : t;
}

Normalization normalize(const LatticeBasis& lattice, const AlignedBox& box) {
    const std::size_t n = box.dim();
    if (lattice.dim() != n) fail(ErrorKind::InvalidInput, "lattice and box dimensions differ");
    Real tbar = pow(volume(box), 1 / Real(n));
    Vector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = tbar / box.t[i];
    Matrix u = Matrix::diagonal(d);
    Vector cube_t(n, tbar);
    Vector cube_y(n);
    for (std::size_t i = 0; i < n; ++i) cube_y[i] = d[i] * box.y[i];
    return Normalization{u, LatticeBasis(u * lattice.basis()), tbar, AlignedBox{std::move(cube_t), std::move(cube_y)}};
}

namespace {

// One supporting slab lo <= a . x[0..k] <= hi of the projected
// parallelotope, scaled so that the coefficient of x[k] is 1.
struct Facet {
    Vector a;  // coefficients of x[0..k-1]
    Real lo;
    Real hi;
};

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Facets of the projection of {center + G u : u in [0,1]^n} onto the first
// k+1 coordinates that involve coordinate k.
std::vector<Facet> level_facets(const Vector& center, const Matrix& g, std::size_t k) {
    const std::size_t n = g.dim();
    const std::size_t m = k + 1;
    std::vector<std::vector<std::size_t>> choices;
    std::vector<std::size_t> cur;
    subsets(n, k, 0, cur, choices);

    Real scale = 0;
    for (const auto& e : g.entries()) scale = std::max(scale, Real(abs(e)));
    const Real tiny = pow10_neg(static_cast<int>(working_digits()) - 10);

    std::vector<Facet> facets;
    for (const auto& s : choices) {
        Vector normal(m, Real(0));
        if (k == 0) {
            normal[0] = 1;
        } else {
            // Generalized cross product of the k truncated generators.
            for (std::size_t i = 0; i < m; ++i) {
                std::vector<Real> minor;
                minor.reserve(k * k);
                for (std::size_t r = 0; r < m; ++r) {
                    if (r == i) continue;
                    for (auto col : s) minor.push_back(g(r, col));
                }
                Real d = determinant(Matrix(k, std::move(minor)));
                normal[i] = ((i + k) % 2 == 0) ? d : Real(-d);
            }
        }
        const Real lead = normal[k];
        if (abs(lead) <= tiny * pow(std::max(scale, Real(1)), Real(k))) continue;
        for (auto& c : normal) c /= lead;

        Real base = 0;
        for (std::size_t i = 0; i < m; ++i) base += normal[i] * center[i];
        Real lo = base;
        Real hi = base;
        for (std::size_t j = 0; j < n; ++j) {
            Real proj = 0;
            for (std::size_t i = 0; i < m; ++i) proj += normal[i] * g(i, j);
            if (proj < 0)
                lo += proj;
            else
                hi += proj;
        }
        normal.resize(k);
        facets.push_back(Facet{std::move(normal), std::move(lo), std::move(hi)});
    }
    return facets;
}

}  // namespace

void for_each_point_in_box(const LatticeBasis& lattice, const AlignedBox& box,
                           const std::function<void(const BoxPoint&)>& visit, CountOptions options) {
    const std::size_t n = box.dim();
    if (lattice.dim() != n) fail(ErrorKind::InvalidInput, "lattice and box dimensions differ");

    Vector tol(n);
    Real slack = 0;
    for (std::size_t i = 0; i < n; ++i) {
        tol[i] = pow10_neg(25) * std::max(box.t[i], Real(1));
        slack = std::max(slack, Real(tol[i] / box.t[i]));
    }
    slack *= 2;

    Normalization norm_box = normalize(lattice, box);
    LllResult red = lll_reduce(norm_box.lambda);
    Matrix m_inv = inverse(red.reduced.basis());

    // Parallelotope in reduced coordinates, widened by the face tolerance so
    // that floating error never drops a point the leaf test would accept.
    const Real side = norm_box.tbar * (1 + 2 * slack);
    Vector corner(n);
    for (std::size_t i = 0; i < n; ++i) corner[i] = norm_box.cube.y[i] - slack * norm_box.tbar;
    Vector center = m_inv * corner;
    Matrix g = m_inv.scaled(side);

    std::vector<std::vector<Facet>> facets(n);
    for (std::size_t k = 0; k < n; ++k) {
        facets[k] = level_facets(center, g, k);
        if (facets[k].empty()) fail(ErrorKind::Degenerate, "degenerate box projection");
    }

    const Matrix& basis = lattice.basis();
    std::uint64_t nodes = 0;
    std::uint64_t found = 0;
    IntVector x(n, 0);
    std::vector<std::int64_t> hi(n, 0);
    const Real eps = pow10_neg(static_cast<int>(working_digits()) - 15);

    auto bounds = [&](std::size_t k) -> bool {
        bool first = true;
        Real lo_r;
        Real hi_r;
        for (const auto& f : facets[k]) {
            Real shift = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (x[i] != 0) shift += f.a[i] * x[i];
            Real l = f.lo - shift;
            Real h = f.hi - shift;
            if (first || l > lo_r) lo_r = l;
            if (first || h < hi_r) hi_r = h;
            first = false;
        }
        Real widen = eps * (1 + abs(lo_r) + abs(hi_r));
        Real lo_c = ceil(lo_r - widen);
        Real hi_c = floor(hi_r + widen);
        if (lo_c > hi_c) return false;
        if (hi_c - lo_c > Real(options.candidate_budget)) {
            throw BudgetError("box count candidate budget exceeded after " + std::to_string(found) + " points", found);
        }
        x[k] = lo_c.convert_to<std::int64_t>();
        hi[k] = hi_c.convert_to<std::int64_t>();
        return true;
    };

    auto leaf = [&]() {
        IntVector z = red.transform.apply(x);
        Vector w = basis.apply(z);
        int boundary_axis = -1;
        bool upper = false;
        for (std::size_t i = 0; i < n; ++i) {
            Real below = w[i] - box.y[i];
            Real above = box.y[i] + box.t[i] - w[i];
            if (below < -tol[i] || above < -tol[i]) return;
            if (boundary_axis < 0 && (abs(below) <= tol[i] || abs(above) <= tol[i])) {
                boundary_axis = static_cast<int>(i);
                upper = abs(above) <= tol[i];
            }
        }
        ++found;
        visit(BoxPoint{z, w, boundary_axis, upper});
    };

    std::size_t k = 0;
    if (!bounds(0)) return;
    while (true) {
        if (x[k] > hi[k]) {
            if (k == 0) return;
            --k;
            ++x[k];
            continue;
        }
        if (++nodes > options.candidate_budget) {
            throw BudgetError("box count candidate budget exceeded after " + std::to_string(found) + " points", found);
        }
        if (k == n - 1) {
            leaf();
            ++x[k];
            continue;
        }
        ++k;
        if (!bounds(k)) {
            --k;
            ++x[k];
        }
    }
}

CountResult count_points(const LatticeBasis& lattice, const AlignedBox& box, CountOptions options) {
    CountResult result;
    for_each_point_in_box(
        lattice, box,
        [&](const BoxPoint& p) {
            ++result.count;
            if (p.boundary_axis >= 0) {
                ++result.boundary_total;
                if (result.boundary_warnings.size() < options.max_warnings) {
                    result.boundary_warnings.push_back(
                        BoundaryWarning{p.z, static_cast<std::size_t>(p.boundary_axis), p.upper_face});
                }
            }
        },
        options);
    return result;
}

}  // namespace latcount
