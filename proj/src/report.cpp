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

#include "report.hpp"

#include <sstream>

namespace latcount {

std::string real_text(const Real& x) { return format_real(x); }

Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(real_text(x));
    return a;
}

Json int_vector_json(const IntVector& z) {
    Json a = Json::array();
    for (auto x : z) a.push_back(x);
    return a;
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) rows.push_back(vector_json(m.row(i)));
    return rows;
}

std::string render_json(const Report& report, const Json& meta) {
    Json out = meta;
    out[report.kind] = report.data;
    return out.dump(2) + "\n";
}

namespace {

void write_row(std::ostringstream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
}

std::string cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Scalar fields of an object as a single-row table.
Table flat_table(const Json& data) {
    Table t;
    std::vector<std::string> row;
    for (auto it = data.begin(); it != data.end(); ++it) {
        if (it.value().is_structured()) continue;
        t.header.push_back(it.key());
        row.push_back(cell(it.value()));
    }
    t.rows.push_back(std::move(row));
    return t;
}

void add_scalars(Report& r) {
    for (auto it = r.data.begin(); it != r.data.end(); ++it)
        if (!it.value().is_structured()) r.scalars[it.key()] = cell(it.value());
}

Json lattice_vector_json(const LatticeVector& v) {
    return Json{{"z", int_vector_json(v.z)}, {"x", vector_json(v.v)}, {"norm", real_text(v.norm)}};
}

Table profile_table(const NuProfile& p) {
    Table t;
    const std::size_t n = p.minimizers.empty() ? 0 : p.minimizers.front().v.size();
    t.header = {"rho", "nu"};
    for (std::size_t i = 0; i < n; ++i) t.header.push_back("x" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) t.header.push_back("z" + std::to_string(i + 1));
    t.header.push_back("zero_flag");
    for (std::size_t k = 0; k < p.rho.size(); ++k) {
        std::vector<std::string> row{real_text(p.rho[k]), real_text(p.values[k])};
        for (const auto& x : p.minimizers[k].v) row.push_back(real_text(x));
        for (auto z : p.minimizers[k].z) row.push_back(std::to_string(z));
        row.push_back(p.zero_flags[k] ? "1" : "0");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Json profile_json(const NuProfile& p) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < p.rho.size(); ++k) {
        rows.push_back(Json{{"rho", real_text(p.rho[k])},
                            {"nu", real_text(p.values[k])},
                            {"minimizer", lattice_vector_json(p.minimizers[k])},
                            {"zero_flag", static_cast<bool>(p.zero_flags[k])}});
    }
    return rows;
}

Json phi_json(const PhiBound& phi) {
    Json j;
    j["kind"] = phi.kind == PhiBound::Kind::Constant ? "constant" : "step";
    j["constant"] = real_text(phi.constant);
    j["q_max"] = phi.q_max.str();
    j["observed_min"] = real_text(phi.observed_min);
    j["observed_argmin"] = phi.observed_argmin.str();
    j["tail_bound"] = real_text(phi.tail_bound);
    j["certified_all_q"] = phi.certified_all_q;
    if (phi.kind == PhiBound::Kind::Step) {
        Json steps = Json::array();
        for (std::size_t i = 0; i < phi.step_q.size(); ++i)
            steps.push_back(Json{{"q", phi.step_q[i].str()}, {"phi", real_text(phi.step_value[i])}});
        j["steps"] = steps;
    }
    return j;
}

}  // namespace

std::string render_csv(const Report& report, const Json& meta) {
    std::ostringstream os;
    for (auto it = meta.begin(); it != meta.end(); ++it) os << "# " << it.key() << ": " << cell(it.value()) << "\n";
    os << "# kind: " << report.kind << "\n";
    const Table t = report.table ? *report.table : flat_table(report.data);
    write_row(os, t.header);
    for (const auto& row : t.rows) write_row(os, row);
    return os.str();
}

Report report_lattice(const LatticeBasis& lattice) {
    Report r;
    r.kind = "lattice";
    r.data["dim"] = lattice.dim();
    r.data["det"] = real_text(lattice.det());
    r.data["unimodular"] = lattice.unimodular();
    r.data["basis"] = matrix_json(lattice.basis());
    add_scalars(r);
    return r;
}

Report report_nu(const NuResult& res, const Real& rho) {
    Report r;
    r.kind = "nu";
    r.data["rho"] = real_text(rho);
    r.data["nu"] = real_text(res.value);
    r.data["zero_flag"] = res.zero_coordinate;
    r.data["minimizer"] = lattice_vector_json(res.minimizer);
    r.flagged = res.zero_coordinate;
    add_scalars(r);
    return r;
}

Report report_nu_profile(const NuProfile& p) {
    Report r;
    r.kind = "nu_profile";
    auto flag = p.first_flag();
    r.flagged = flag.has_value();
    r.data["weakly_admissible_on_grid"] = !r.flagged;
    if (flag) r.data["first_flag_rho"] = real_text(p.rho[*flag]);
    r.data["points"] = p.rho.size();
    r.data["profile"] = profile_json(p);
    r.table = profile_table(p);
    add_scalars(r);
    return r;
}

Report report_count(const CountResult& c, const AlignedBox& box) {
    Report r;
    r.kind = "count";
    const Real vol = volume(box);
    r.data["count"] = c.count;
    r.data["volume"] = real_text(vol);
    r.data["error"] = real_text(abs(Real(c.count) - vol));
    r.data["boundary_points"] = c.boundary_total;
    Json warnings = Json::array();
    for (const auto& w : c.boundary_warnings)
        warnings.push_back(Json{{"z", int_vector_json(w.z)}, {"axis", w.axis}, {"face", w.upper_face ? "upper" : "lower"}});
    r.data["boundary_warnings"] = warnings;
    add_scalars(r);
    return r;
}

Report report_bound(const BoundReport& b) {
    Report r;
    r.kind = "bound";
    r.data["count"] = b.count;
    r.data["volume"] = real_text(b.volume);
    r.data["abs_error"] = real_text(b.abs_error);
    r.data["T"] = real_text(b.T);
    r.data["T_star"] = real_text(b.T_star);
    r.data["rho"] = real_text(b.rho);
    r.data["rho_T"] = real_text(b.rho_T);
    r.data["nu_rhoT"] = real_text(b.nu_rhoT);
    r.data["R"] = real_text(b.R);
    r.data["two_R_T"] = real_text(b.two_R_T);
    r.data["nu_Tstar"] = real_text(b.nu_Tstar);
    r.data["nu_2RT"] = real_text(b.nu_2RT);
    r.data["term_volume"] = real_text(b.term_volume);
    r.data["term_remainder"] = real_text(b.term_remainder);
    r.data["rhs_total"] = real_text(b.rhs_total);
    r.data["boundary_points"] = b.boundary_points;
    add_scalars(r);
    return r;
}

Report report_bound_homogeneous(const HomogeneousBoundReport& b) {
    Report r;
    r.kind = "bound_homogeneous";
    r.data["count"] = b.count;
    r.data["t"] = real_text(b.t);
    r.data["volume"] = real_text(b.volume);
    r.data["abs_error"] = real_text(b.abs_error);
    r.data["rho"] = real_text(b.rho);
    r.data["surface"] = real_text(b.surface);
    r.data["lambda_n"] = real_text(b.lambda_n);
    r.data["nu_rho"] = real_text(b.nu_rho);
    r.data["r"] = real_text(b.r);
    r.data["s_sum"] = real_text(b.s_sum);
    r.data["s_members"] = b.s_members;
    r.data["rhs_total"] = real_text(b.rhs_total);
    r.data["boundary_points"] = b.boundary_points;
    add_scalars(r);
    return r;
}

Report report_s_sum(const SSumResult& s, const Real& radius) {
    Report r;
    r.kind = "s_sum";
    r.data["r"] = real_text(radius);
    r.data["s_sum"] = real_text(s.value);
    r.data["members"] = s.members;
    r.data["max_term"] = real_text(s.max_term);
    Json m = Json::array();
    for (int e : s.max_term_exponents) m.push_back(e);
    r.data["max_term_exponents"] = m;
    add_scalars(r);
    return r;
}

Report report_compare(const NuComparison& c) {
    Report r;
    r.kind = "dual_compare";
    r.data["max_abs_diff"] = real_text(c.max_abs_diff);
    r.data["primal_flags"] = c.primal_flags;
    r.data["dual_flags"] = c.dual_flags;
    Table t;
    t.header = {"rho", "nu_primal", "nu_dual", "abs_diff"};
    Json rows = Json::array();
    for (std::size_t i = 0; i < c.rho.size(); ++i) {
        std::vector<std::string> row{real_text(c.rho[i]), real_text(c.nu_primal[i]), real_text(c.nu_dual[i]),
                                     real_text(c.abs_diff[i])};
        rows.push_back(Json{{"rho", row[0]}, {"nu_primal", row[1]}, {"nu_dual", row[2]}, {"abs_diff", row[3]}});
        t.rows.push_back(std::move(row));
    }
    r.data["table"] = rows;
    r.table = std::move(t);
    add_scalars(r);
    return r;
}

Report report_example31(const LatticeBasis& lattice, const NuProfile& primal, const NuProfile& dual) {
    Report r;
    r.kind = "example31";
    const LatticeBasis d = dual_basis(lattice);
    const std::size_t n = lattice.dim();
    r.data["n"] = n;
    r.data["det"] = real_text(lattice.det());
    r.data["dual_corner_entry"] = real_text(d.basis()(n - 1, n - 1));
    auto pf = primal.first_flag();
    auto df = dual.first_flag();
    r.data["primal_flagged"] = pf.has_value();
    r.data["dual_flagged"] = df.has_value();
    if (df) r.data["dual_first_flag_rho"] = real_text(dual.rho[*df]);
    r.data["basis"] = matrix_json(lattice.basis());
    r.data["dual_basis"] = matrix_json(d.basis());
    r.data["primal_profile"] = profile_json(primal);
    r.data["dual_profile"] = profile_json(dual);
    r.flagged = df.has_value();

    Table t;
    t.header = {"rho", "nu_primal", "primal_zero_flag", "nu_dual", "dual_zero_flag"};
    for (std::size_t i = 0; i < primal.rho.size(); ++i) {
        t.rows.push_back({real_text(primal.rho[i]), real_text(primal.values[i]), primal.zero_flags[i] ? "1" : "0",
                          real_text(dual.values[i]), dual.zero_flags[i] ? "1" : "0"});
    }
    r.table = std::move(t);
    add_scalars(r);
    return r;
}

Report report_dio(const IrrationalSpec& alpha, const PhiBound& phi, const DioCountResult& res, std::uint64_t box_count) {
    Report r;
    r.kind = "dio";
    r.data["alpha"] = alpha.text;
    r.data["alpha_value"] = real_text(alpha.value);
    r.data["N"] = res.N;
    r.data["vol"] = real_text(res.volume);
    r.data["abs_error"] = real_text(res.abs_error);
    r.data["E"] = real_text(res.E);
    r.data["E_prime"] = real_text(res.E_prime);
    r.data["bound"] = real_text(res.bound);
    r.data["box_count"] = box_count;
    r.data["cross_diff"] = static_cast<std::int64_t>(res.N) - static_cast<std::int64_t>(box_count);
    r.data["phi"] = phi_json(phi);
    add_scalars(r);
    return r;
}

Report report_sweep(const IrrationalSpec& alpha, const PhiBound& phi, const std::vector<SweepRow>& rows) {
    Report r;
    r.kind = "dio_sweep";
    r.data["alpha"] = alpha.text;
    r.data["alpha_value"] = real_text(alpha.value);
    r.data["phi"] = phi_json(phi);
    Table t;
    t.header = {"t", "eps", "N", "vol", "abs_error", "ln_vol", "E", "E_prime", "bound", "box_count", "cross_diff"};
    Json jrows = Json::array();
    for (const auto& row : rows) {
        std::vector<std::string> cells{real_text(row.t),
                                       real_text(row.eps),
                                       std::to_string(row.result.N),
                                       real_text(row.result.volume),
                                       real_text(row.result.abs_error),
                                       real_text(row.ln_volume),
                                       real_text(row.result.E),
                                       real_text(row.result.E_prime),
                                       real_text(row.result.bound),
                                       std::to_string(row.box_count),
                                       std::to_string(row.cross_diff)};
        Json jr = Json::object();
        for (std::size_t i = 0; i < cells.size(); ++i) jr[t.header[i]] = cells[i];
        jrows.push_back(jr);
        t.rows.push_back(std::move(cells));
    }
    r.data["rows"] = jrows;
    r.table = std::move(t);
    add_scalars(r);
    return r;
}

}  // namespace latcount
