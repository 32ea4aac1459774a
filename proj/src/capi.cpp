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

#include "latcount/latcount.h"

#include "report.hpp"

#include <memory>
#include <new>

using namespace latcount;

struct latc_context {
    unsigned digits = kDefaultDigits;
    EnumerationOptions enumeration;
    CountOptions count;
    unsigned workers = 0;
    Json config = Json::object();
    std::string last_error;
};

struct latc_lattice {
    LatticeBasis basis;
};

struct latc_box {
    AlignedBox box;
};

struct latc_result {
    std::string json;
    std::string csv;
    bool flagged = false;
    std::map<std::string, std::string> scalars;
};

namespace {

template <class F>
latc_status guarded(latc_context* ctx, F&& body) {
    if (!ctx) return LATC_ERR_INPUT;
    ctx->last_error.clear();
    try {
        set_working_digits(ctx->digits);
        body();
        return LATC_OK;
    } catch (const Error& e) {
        ctx->last_error = e.what();
        switch (e.kind()) {
            case ErrorKind::InvalidInput: return LATC_ERR_INPUT;
            case ErrorKind::Degenerate: return LATC_ERR_DEGENERATE;
            case ErrorKind::BudgetExceeded: return LATC_ERR_BUDGET;
            case ErrorKind::PrecisionExhausted: return LATC_ERR_PRECISION;
        }
        return LATC_ERR_INTERNAL;
    } catch (const nlohmann::json::exception& e) {
        ctx->last_error = std::string("malformed JSON: ") + e.what();
        return LATC_ERR_INPUT;
    } catch (const std::bad_alloc&) {
        ctx->last_error = "out of memory";
        return LATC_ERR_BUDGET;
    } catch (const std::exception& e) {
        ctx->last_error = std::string("internal error: ") + e.what();
        return LATC_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) fail(ErrorKind::InvalidInput, std::string("missing argument: ") + what);
}

Real scalar_arg(const char* text, const char* what) {
    require(text, what);
    return parse_real(text);
}

NuOptions nu_options(const latc_context* ctx) {
    NuOptions o;
    o.enumeration = ctx->enumeration;
    o.count = ctx->count;
    return o;
}

Json meta(const latc_context* ctx) {
    Json m = Json::object();
    m["version"] = LATCOUNT_VERSION;
    m["precision"] = ctx->digits;
    m["seed"] = ctx->config.contains("seed") ? ctx->config["seed"] : Json(nullptr);
    m["config"] = ctx->config;
    return m;
}

void emit(const latc_context* ctx, const Report& report, latc_result** out) {
    auto r = std::make_unique<latc_result>();
    const Json m = meta(ctx);
    r->json = render_json(report, m);
    r->csv = render_csv(report, m);
    r->flagged = report.flagged;
    r->scalars = report.scalars;
    *out = r.release();
}

BigInt q_max_arg(const char* text) {
    if (!text) return BigInt(1'000'000);
    auto q = parse_rational(text);
    if (!q || denominator(*q) != 1 || *q < 1) fail(ErrorKind::InvalidInput, "q_max must be a positive integer");
    return numerator(*q);
}

}  // namespace

extern "C" {

const char* latc_version(void) { return LATCOUNT_VERSION; }

latc_status latc_context_new(unsigned digits, latc_context** out) {
    if (!out) return LATC_ERR_INPUT;
    if (digits == 0) digits = kDefaultDigits;
    if (digits < kMinDigits) return LATC_ERR_INPUT;
    auto* ctx = new (std::nothrow) latc_context;
    if (!ctx) return LATC_ERR_INTERNAL;
    ctx->digits = digits;
    *out = ctx;
    return LATC_OK;
}

void latc_context_free(latc_context* ctx) { delete ctx; }

unsigned latc_context_digits(const latc_context* ctx) { return ctx ? ctx->digits : 0; }

latc_status latc_context_set_budgets(latc_context* ctx, uint64_t enumeration_nodes, uint64_t box_candidates) {
    if (!ctx) return LATC_ERR_INPUT;
    if (enumeration_nodes) ctx->enumeration.node_budget = enumeration_nodes;
    if (box_candidates) ctx->count.candidate_budget = box_candidates;
    return LATC_OK;
}

latc_status latc_context_set_workers(latc_context* ctx, unsigned workers) {
    if (!ctx) return LATC_ERR_INPUT;
    ctx->workers = workers;
    return LATC_OK;
}

latc_status latc_context_set_run_config(latc_context* ctx, const char* json) {
    return guarded(ctx, [&] {
        require(json, "json");
        Json c = Json::parse(json);
        if (!c.is_object()) fail(ErrorKind::InvalidInput, "run config must be a JSON object");
        ctx->config = std::move(c);
    });
}

const char* latc_last_error(const latc_context* ctx) { return ctx ? ctx->last_error.c_str() : "no context"; }

latc_status latc_lattice_parse(latc_context* ctx, const char* matrix_json, latc_lattice** out) {
    return guarded(ctx, [&] {
        require(matrix_json, "matrix_json");
        require(out, "out");
        *out = new latc_lattice{LatticeBasis(parse_matrix_json(matrix_json))};
    });
}

latc_status latc_lattice_dual(latc_context* ctx, const latc_lattice* lattice, latc_lattice** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(out, "out");
        *out = new latc_lattice{dual_basis(lattice->basis)};
    });
}

latc_status latc_lattice_example31(latc_context* ctx, int n, uint64_t seed, latc_lattice** out) {
    return guarded(ctx, [&] {
        require(out, "out");
        *out = new latc_lattice{example31_build(n, seed)};
    });
}

latc_status latc_lattice_application(latc_context* ctx, const char* alpha, const char* y, const char* eps,
                                     const char* t, latc_lattice** lattice, latc_box** box) {
    return guarded(ctx, [&] {
        require(alpha, "alpha");
        require(lattice, "lattice");
        require(box, "box");
        IrrationalSpec a = parse_irrational(alpha);
        Application app =
            build_application(a.value, scalar_arg(y, "y"), scalar_arg(eps, "eps"), scalar_arg(t, "t"));
        auto l = std::make_unique<latc_lattice>(latc_lattice{std::move(app.lattice)});
        auto b = std::make_unique<latc_box>(latc_box{std::move(app.box)});
        *lattice = l.release();
        *box = b.release();
    });
}

int latc_lattice_dim(const latc_lattice* lattice) { return lattice ? static_cast<int>(lattice->basis.dim()) : 0; }

int latc_lattice_is_unimodular(const latc_lattice* lattice) { return lattice && lattice->basis.unimodular() ? 1 : 0; }

latc_status latc_lattice_describe(latc_context* ctx, const latc_lattice* lattice, latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(out, "out");
        emit(ctx, report_lattice(lattice->basis), out);
    });
}

void latc_lattice_free(latc_lattice* lattice) { delete lattice; }

latc_status latc_box_parse(latc_context* ctx, const char* t_json, const char* y_json, latc_box** out) {
    return guarded(ctx, [&] {
        require(t_json, "t_json");
        require(out, "out");
        Vector t = parse_vector_json(t_json);
        Vector y = y_json ? parse_vector_json(y_json) : Vector(t.size(), Real(0));
        *out = new latc_box{make_box(std::move(t), std::move(y))};
    });
}

void latc_box_free(latc_box* box) { delete box; }

latc_status latc_nu(latc_context* ctx, const latc_lattice* lattice, const char* rho, latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(out, "out");
        Real r = scalar_arg(rho, "rho");
        emit(ctx, report_nu(nu(lattice->basis, r, nu_options(ctx)), r), out);
    });
}

latc_status latc_nu_probe(latc_context* ctx, const latc_lattice* lattice, const char* rho_max, unsigned points,
                          latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(out, "out");
        NuProfile p = weak_admissibility_probe(lattice->basis, scalar_arg(rho_max, "rho_max"), points, nu_options(ctx));
        emit(ctx, report_nu_profile(p), out);
    });
}

latc_status latc_count(latc_context* ctx, const latc_lattice* lattice, const latc_box* box, latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(box, "box");
        require(out, "out");
        emit(ctx, report_count(count_points(lattice->basis, box->box, ctx->count), box->box), out);
    });
}

latc_status latc_bound(latc_context* ctx, const latc_lattice* lattice, const latc_box* box, const char* rho,
                       latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(box, "box");
        require(out, "out");
        Real r = rho ? parse_real(rho) : default_rho(box->box);
        emit(ctx, report_bound(skriganov_bound_inhomogeneous(lattice->basis, box->box, r, nu_options(ctx))), out);
    });
}

latc_status latc_bound_homogeneous(latc_context* ctx, const latc_lattice* lattice, const latc_box* unit_box,
                                   const char* t, const char* rho, latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(unit_box, "unit_box");
        require(out, "out");
        Real tt = scalar_arg(t, "t");
        Real r;
        if (rho) {
            r = parse_real(rho);
        } else {
            Vector sides(unit_box->box.t);
            for (auto& s : sides) s *= tt;
            r = default_rho(AlignedBox{sides, Vector(sides.size(), Real(0))});
        }
        emit(ctx,
             report_bound_homogeneous(
                 skriganov_bound_homogeneous(lattice->basis, unit_box->box, tt, r, nu_options(ctx), ctx->workers)),
             out);
    });
}

latc_status latc_s_sum(latc_context* ctx, const latc_lattice* lattice, const char* r, latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(out, "out");
        Real radius = scalar_arg(r, "r");
        emit(ctx, report_s_sum(s_sum(lattice->basis, radius, ctx->enumeration, ctx->workers), radius), out);
    });
}

latc_status latc_dual_compare(latc_context* ctx, const latc_lattice* lattice, const char* rho_max, unsigned points,
                              latc_result** out) {
    return guarded(ctx, [&] {
        require(lattice, "lattice");
        require(out, "out");
        if (!lattice->basis.unimodular()) fail(ErrorKind::InvalidInput, "dual comparison needs a unimodular lattice");
        auto grid = probe_grid(static_cast<int>(lattice->basis.dim()), scalar_arg(rho_max, "rho_max"), points);
        emit(ctx, report_compare(nu_profile_compare(lattice->basis, grid, nu_options(ctx))), out);
    });
}

latc_status latc_example31(latc_context* ctx, int n, uint64_t seed, const char* rho_max, unsigned points,
                           latc_result** out) {
    return guarded(ctx, [&] {
        require(out, "out");
        LatticeBasis lat = example31_build(n, seed);
        const Real top = scalar_arg(rho_max, "rho_max");
        NuProfile primal = weak_admissibility_probe(lat, top, points, nu_options(ctx));
        NuProfile dual = weak_admissibility_probe(dual_basis(lat), top, points, nu_options(ctx));
        emit(ctx, report_example31(lat, primal, dual), out);
    });
}

latc_status latc_dio(latc_context* ctx, const char* alpha, const char* y, const char* eps, const char* t,
                     const char* q_max, latc_result** out) {
    return guarded(ctx, [&] {
        require(alpha, "alpha");
        require(out, "out");
        IrrationalSpec a = parse_irrational(alpha);
        PhiBound phi = phi_from_cf(a, q_max_arg(q_max));
        const Real yy = scalar_arg(y, "y");
        const Real ee = scalar_arg(eps, "eps");
        const Real tt = scalar_arg(t, "t");
        DioCountResult res = corollary_bound(a.value, yy, ee, tt, phi);
        Application app = build_application(a.value, yy, ee, tt);
        const std::uint64_t boxed = count_points(app.lattice, app.box, ctx->count).count;
        emit(ctx, report_dio(a, phi, res, boxed), out);
    });
}

latc_status latc_dio_sweep(latc_context* ctx, const char* alpha, const char* y, const char* eps,
                           const char* t_list_json, const char* q_max, latc_result** out) {
    return guarded(ctx, [&] {
        require(alpha, "alpha");
        require(out, "out");
        IrrationalSpec a = parse_irrational(alpha);
        PhiBound phi = phi_from_cf(a, q_max_arg(q_max));
        require(t_list_json, "t_list_json");
        Vector ts = parse_vector_json(t_list_json);
        if (ts.empty()) fail(ErrorKind::InvalidInput, "sweep needs at least one t");
        auto rows = dio_sweep(a.value, scalar_arg(y, "y"), scalar_arg(eps, "eps"), std::move(ts), phi, ctx->workers,
                              ctx->count);
        emit(ctx, report_sweep(a, phi, rows), out);
    });
}

const char* latc_result_json(const latc_result* result) { return result ? result->json.c_str() : nullptr; }

const char* latc_result_csv(const latc_result* result) { return result ? result->csv.c_str() : nullptr; }

int latc_result_flagged(const latc_result* result) { return result && result->flagged ? 1 : 0; }

const char* latc_result_scalar(const latc_result* result, const char* key) {
    if (!result || !key) return nullptr;
    auto it = result->scalars.find(key);
    return it == result->scalars.end() ? nullptr : it->second.c_str();
}

void latc_result_free(latc_result* result) { delete result; }

}  // extern "C"
