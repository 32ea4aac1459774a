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

/// diag(t) [0,1]^n + y. Closed: every face belongs to the box.
struct AlignedBox {
    Vector t;
    Vector y;

    std::size_t dim() const noexcept { return t.size(); }
};

/// Validates t_i > 0 and matching dimensions.
AlignedBox make_box(Vector t, Vector y);

Real volume(const AlignedBox& box);

/// (t_1 ... t_n)^(1/n) / min t_i, never below 1.
Real t_quantity(const AlignedBox& box);

struct BoundaryWarning {
    IntVector z;
    std::size_t axis = 0;
    bool upper_face = false;
};

struct CountOptions {
    std::uint64_t candidate_budget = 1'000'000'000;
    std::size_t max_warnings = 1000;
};

struct CountResult {
    std::uint64_t count = 0;
    std::uint64_t boundary_total = 0;            // all points near a face
    std::vector<BoundaryWarning> boundary_warnings;  // first max_warnings of them
};

/// A lattice point inside the box. boundary_axis is -1 unless the point lies
/// within 1e-25 max(t_i, 1) of a face.
struct BoxPoint {
    const IntVector& z;
    const Vector& w;
    int boundary_axis;
    bool upper_face;
};

/// Visits every lattice point of the closed box exactly once.
///
/// The box is first rescaled to a cube (see normalize) and the rescaled
/// lattice LLL-reduced, so the descent cost tracks the number of points
/// rather than the box's aspect ratio. Coordinates are fixed one at a time;
/// the admissible range of each is read off the facets of the projected
/// parallelotope, i.e. the linear functional is extremized over the slab
/// left by the fixed prefix.
void for_each_point_in_box(const LatticeBasis& lattice, const AlignedBox& box,
                           const std::function<void(const BoxPoint&)>& visit, CountOptions options = {});

CountResult count_points(const LatticeBasis& lattice, const AlignedBox& box, CountOptions options = {});

struct Normalization {
    Matrix u;             // tbar diag(1/t_i)
    LatticeBasis lambda;  // U Gamma
    Real tbar;            // (t_1 ... t_n)^(1/n)
    AlignedBox cube;      // tbar [0,1]^n + U y
};

Normalization normalize(const LatticeBasis& lattice, const AlignedBox& box);

}  // namespace latcount
