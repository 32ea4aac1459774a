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

#include "bounds.hpp"

namespace latcount {

namespace {

Real dual_nu(const LatticeBasis& dual, const Real& radius, const NuOptions& options) {
    NuResult r = nu(dual, radius, options);
    if (!(r.value > 0)) fail(ErrorKind::Degenerate, "dual not weakly admissible at radius " + format_real(radius, 20));
    return r.value;
}

void require_unimodular(const LatticeBasis& lattice) {
    if (!lattice.unimodular()) fail(ErrorKind::InvalidInput, "counting bound needs a unimodular lattice");
}

}  // namespace

Real surface_area(const AlignedBox& box) {
    Real s = 0;
    for (std::size_t i = 0; i < box.dim(); ++i) {
        Real face = 1;
        for (std::size_t j = 0; j < box.dim(); ++j)
            if (j != i) face *= box.t[j];
        s += face;
    }
    return 2 * s;
}

Real default_rho(const AlignedBox& box) {
    const Real n(box.dim());
    Real rho = pow(volume(box), 2 - 2 / n);
    Real floor = Real("1.01") * hermite_threshold(static_cast<int>(box.dim()));
    return rho > floor ? rho : floor;
}

BoundReport skriganov_bound_inhomogeneous(const LatticeBasis& lattice, const AlignedBox& box, const Real& rho,
                                          const NuOptions& options) {
    require_unimodular(lattice);
    const int n = static_cast<int>(lattice.dim());
    if (box.dim() != lattice.dim()) fail(ErrorKind::InvalidInput, "lattice and box dimensions differ");
    if (!(rho > hermite_threshold(n))) fail(ErrorKind::InvalidInput, "rho below Hermite threshold: " + format_real(rho, 20));

    const LatticeBasis dual = dual_basis(lattice);
    BoundReport rep;
    rep.rho = rho;
    rep.volume = volume(box);
    rep.T = t_quantity(box);
    rep.T_star = star(rep.T, n);
    rep.rho_T = rho * rep.T;

    rep.nu_Tstar = dual_nu(dual, rep.T_star, options);
    rep.nu_rhoT = dual_nu(dual, rep.rho_T, options);
    rep.R = Real(n) * n + log(pow(rho, Real(n)) / rep.nu_rhoT);
    rep.two_R_T = pow(Real(2), rep.R) * rep.T;
    if (star(rep.two_R_T, n) != rep.two_R_T) fail(ErrorKind::Degenerate, "2^R T fell below gamma_n");
    rep.nu_2RT = dual_nu(dual, rep.two_R_T, options);

    rep.term_volume = pow(rep.volume, 1 - 1 / Real(n)) / sqrt(rho);
    rep.term_remainder = pow(rep.R, Real(n - 1)) / rep.nu_2RT;
    rep.rhs_total = (rep.term_volume + rep.term_remainder) / rep.nu_Tstar;

    CountResult c = count_points(lattice, box, options.count);
    rep.count = c.count;
    rep.boundary_points = c.boundary_total;
    rep.abs_error = abs(Real(c.count) - rep.volume);
    return rep;
}

HomogeneousBoundReport skriganov_bound_homogeneous(const LatticeBasis& lattice, const AlignedBox& unit_box,
                                                   const Real& t, const Real& rho, const NuOptions& options,
                                                   unsigned workers) {
    require_unimodular(lattice);
    const int n = static_cast<int>(lattice.dim());
    if (unit_box.dim() != lattice.dim()) fail(ErrorKind::InvalidInput, "lattice and box dimensions differ");
    if (abs(volume(unit_box) - 1) > pow10_neg(30)) fail(ErrorKind::InvalidInput, "homogeneous bound needs a box of volume 1");
    if (!(t > 0)) fail(ErrorKind::InvalidInput, "dilation t must be positive");
    if (!(rho > hermite_threshold(n))) fail(ErrorKind::InvalidInput, "rho below Hermite threshold: " + format_real(rho, 20));

    const LatticeBasis dual = dual_basis(lattice);
    HomogeneousBoundReport rep;
    rep.t = t;
    rep.rho = rho;
    rep.volume = pow(t, Real(n));
    rep.surface = surface_area(unit_box);
    if (rep.surface < 1) fail(ErrorKind::Degenerate, "surface area below 1");
    rep.lambda_n = successive_minima(lattice, options.enumeration).lambdas.back();
    rep.nu_rho = dual_nu(dual, rho, options);
    rep.r = Real(n) * n + log(pow(rho, Real(n)) / rep.nu_rho);
    SSumResult s = s_sum(dual, rep.r, options.enumeration, workers);
    rep.s_sum = s.value;
    rep.s_members = s.members;
    rep.rhs_total = pow(rep.surface * rep.lambda_n, Real(n)) * (pow(t, Real(n - 1)) / sqrt(rho) + rep.s_sum);

    Vector tt(unit_box.t);
    Vector yy(unit_box.y);
    for (auto& x : tt) x *= t;
    for (auto& x : yy) x *= t;
    CountResult c = count_points(lattice, AlignedBox{std::move(tt), std::move(yy)}, options.count);
    rep.count = c.count;
    rep.boundary_points = c.boundary_total;
    rep.abs_error = abs(Real(c.count) - rep.volume);
    return rep;
}

}  // namespace latcount
