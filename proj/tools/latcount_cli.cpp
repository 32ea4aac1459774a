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

#include <CLI11.hpp>
#include <json.hpp>

#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitResource = 3;

int exit_code(latc_status s) {
    switch (s) {
        case LATC_OK: return kExitOk;
        case LATC_ERR_INPUT: return kExitInput;
        case LATC_ERR_DEGENERATE: return kExitDegenerate;
        default: return kExitResource;
    }
}

struct Failure {
    int code;
    std::string message;
};

// "@path" reads the file, anything else is the literal text.
std::string inline_or_file(const std::string& v) {
    if (v.empty() || v[0] != '@') return v;
    std::ifstream in(v.substr(1));
    if (!in) throw Failure{kExitInput, "cannot read " + v.substr(1)};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* opt(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

template <class T, void (*Free)(T*)>
struct Owned {
    T* p = nullptr;
    Owned() = default;
    Owned(const Owned&) = delete;
    Owned& operator=(const Owned&) = delete;
    ~Owned() {
        if (p) Free(p);
    }
};

using Context = Owned<latc_context, latc_context_free>;
using Lattice = Owned<latc_lattice, latc_lattice_free>;
using Box = Owned<latc_box, latc_box_free>;
using Result = Owned<latc_result, latc_result_free>;

struct Globals {
    unsigned precision = 50;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    unsigned workers = 0;
    std::uint64_t node_budget = 100'000'000;
    std::uint64_t box_budget = 1'000'000'000;
};

// One subcommand: its string parameters (in registration order, which is
// also the order they appear in the embedded config) and its runner.
struct Command {
    CLI::App* app = nullptr;
    std::vector<std::pair<std::string, std::string*>> params;
    std::vector<std::pair<std::string, unsigned*>> counts;
    std::vector<std::pair<std::string, bool*>> flags;
    std::function<int(latc_context*, Result&)> run;
};

class Cli {
public:
    Cli() : app_("Lattice point counting, nu profiles and Diophantine sweeps.", "latcount") {
        app_.set_config("--config", "", "TOML config file with the same keys as the flags");
        app_.add_option("--precision", g_.precision, "Significant decimal digits (>= 30)")->capture_default_str();
        app_.add_option("--seed", g_.seed, "Seed for randomized constructions")->capture_default_str();
        app_.add_option("--out", g_.out, "Output file (default: stdout)");
        app_.add_option("--format", g_.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        app_.add_option("--workers", g_.workers, "Worker threads (0: available parallelism)")->capture_default_str();
        app_.add_option("--node-budget", g_.node_budget, "Enumeration node budget")->capture_default_str();
        app_.add_option("--box-budget", g_.box_budget, "Box counting candidate budget")->capture_default_str();
        app_.require_subcommand(1);
        app_.fallthrough();
        define_commands();
    }

    int main(int argc, char** argv) {
        try {
            app_.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app_.exit(e);
        } catch (const CLI::CallForAllHelp& e) {
            return app_.exit(e);
        } catch (const CLI::CallForVersion& e) {
            return app_.exit(e);
        } catch (const CLI::ParseError& e) {
            app_.exit(e);
            return kExitInput;
        }
        try {
            return execute();
        } catch (const Failure& f) {
            std::cerr << "error: " << f.message << "\n";
            return f.code;
        }
    }

private:
    CLI::App app_;
    Globals g_;
    std::vector<Command> commands_;
    std::deque<std::string> strings_;
    std::deque<unsigned> uints_;
    std::deque<bool> bools_;

    Command& add(const std::string& name, const std::string& help) {
        commands_.push_back(Command{});
        commands_.back().app = app_.add_subcommand(name, help);
        return commands_.back();
    }

    std::string* param(Command& c, const std::string& name, const std::string& help, std::string def = "") {
        auto* storage = &strings_.emplace_back(std::move(def));
        c.params.emplace_back(name, storage);
        auto* o = c.app->add_option("--" + name, *storage, help);
        if (!storage->empty()) o->capture_default_str();
        return storage;
    }

    unsigned* count(Command& c, const std::string& name, const std::string& help, unsigned def) {
        auto* storage = &uints_.emplace_back(def);
        c.counts.emplace_back(name, storage);
        c.app->add_option("--" + name, *storage, help)->capture_default_str();
        return storage;
    }

    bool* flag(Command& c, const std::string& name, const std::string& help) {
        auto* storage = &bools_.emplace_back(false);
        c.flags.emplace_back(name, storage);
        c.app->add_flag("--" + name, *storage, help);
        return storage;
    }

    static void check(latc_context* ctx, latc_status s) {
        if (s != LATC_OK) throw Failure{exit_code(s), latc_last_error(ctx)};
    }

    static void need(const std::string& v, const std::string& name) {
        if (v.empty()) throw Failure{kExitInput, "--" + name + " is required"};
    }

    static void load_lattice(latc_context* ctx, const std::string& matrix, Lattice& lat) {
        need(matrix, "matrix");
        check(ctx, latc_lattice_parse(ctx, inline_or_file(matrix).c_str(), &lat.p));
    }

    static void load_box(latc_context* ctx, const std::string& t, const std::string& y, Box& box) {
        need(t, "t");
        const std::string yy = y.empty() ? std::string() : inline_or_file(y);
        check(ctx, latc_box_parse(ctx, inline_or_file(t).c_str(), opt(yy), &box.p));
    }

    void define_commands() {
        {
            auto& c = add("nu", "nu profile and weak admissibility probe (exit 2 when a zero coordinate appears)");
            auto* matrix = param(c, "matrix", "Basis as JSON rows (columns generate the lattice), or @file");
            auto* rho = param(c, "rho", "Evaluate nu at this single radius instead of a probe grid");
            auto* rho_max = param(c, "rho-max", "Largest probe radius", "20");
            auto* points = count(c, "points", "Probe grid size", 20);
            c.run = [=](latc_context* ctx, Result& res) {
                Lattice lat;
                load_lattice(ctx, *matrix, lat);
                if (!rho->empty())
                    check(ctx, latc_nu(ctx, lat.p, rho->c_str(), &res.p));
                else
                    check(ctx, latc_nu_probe(ctx, lat.p, rho_max->c_str(), *points, &res.p));
                return latc_result_flagged(res.p) ? kExitDegenerate : kExitOk;
            };
        }
        {
            auto& c = add("count", "Exact number of lattice points in a closed aligned box");
            auto* matrix = param(c, "matrix", "Basis as JSON rows, or @file");
            auto* t = param(c, "t", "Side lengths as a JSON array");
            auto* y = param(c, "y", "Translation as a JSON array (default 0)");
            c.run = [=](latc_context* ctx, Result& res) {
                Lattice lat;
                Box box;
                load_lattice(ctx, *matrix, lat);
                load_box(ctx, *t, *y, box);
                check(ctx, latc_count(ctx, lat.p, box.p, &res.p));
                return kExitOk;
            };
        }
        {
            auto& c = add("bound", "Counting error bound report (inhomogeneous, or --homogeneous)");
            auto* matrix = param(c, "matrix", "Basis as JSON rows, or @file");
            auto* t = param(c, "t", "Side lengths as a JSON array");
            auto* y = param(c, "y", "Translation as a JSON array (default 0)");
            auto* rho = param(c, "rho", "Free parameter rho (default max(vol^(2-2/n), 1.01 gamma_n^(1/2)))");
            auto* homogeneous = flag(c, "homogeneous", "Homogeneous bound for the dilate of a volume-one box");
            auto* dilation = param(c, "dilation", "Dilation factor for --homogeneous");
            auto* alpha = param(c, "alpha", "Use the Diophantine lattice and box for alpha (surd:a,b,c,d or dec:x)");
            auto* shift = param(c, "shift", "Shift y of the Diophantine box", "0");
            auto* eps = param(c, "eps", "Width eps of the Diophantine box");
            auto* length = param(c, "length", "Length t of the Diophantine box");
            c.run = [=](latc_context* ctx, Result& res) {
                Lattice lat;
                Box box;
                if (!alpha->empty()) {
                    need(*eps, "eps");
                    need(*length, "length");
                    check(ctx, latc_lattice_application(ctx, alpha->c_str(), shift->c_str(), eps->c_str(),
                                                        length->c_str(), &lat.p, &box.p));
                } else {
                    load_lattice(ctx, *matrix, lat);
                    load_box(ctx, *t, *y, box);
                }
                if (*homogeneous) {
                    need(*dilation, "dilation");
                    check(ctx, latc_bound_homogeneous(ctx, lat.p, box.p, dilation->c_str(), opt(*rho), &res.p));
                } else {
                    check(ctx, latc_bound(ctx, lat.p, box.p, opt(*rho), &res.p));
                }
                return kExitOk;
            };
        }
        {
            auto& c = add("dual-compare", "Compare nu profiles of a lattice and its dual");
            auto* matrix = param(c, "matrix", "Basis as JSON rows, or @file");
            auto* example31 = param(c, "example31", "Use the zero-minor construction of this dimension instead");
            auto* rho_max = param(c, "rho-max", "Largest grid radius", "20");
            auto* points = count(c, "points", "Grid size", 20);
            c.run = [=, this](latc_context* ctx, Result& res) {
                Lattice lat;
                if (!example31->empty()) {
                    int n = 0;
                    try {
                        n = std::stoi(*example31);
                    } catch (const std::exception&) {
                        throw Failure{kExitInput, "--example31 must be an integer"};
                    }
                    check(ctx, latc_lattice_example31(ctx, n, g_.seed, &lat.p));
                } else {
                    load_lattice(ctx, *matrix, lat);
                }
                check(ctx, latc_dual_compare(ctx, lat.p, rho_max->c_str(), *points, &res.p));
                return kExitOk;
            };
        }
        {
            auto& c = add("example31", "Lattice whose dual has a zero coordinate; probes both");
            auto* n = count(c, "n", "Dimension (>= 3)", 3);
            auto* rho_max = param(c, "rho-max", "Largest probe radius", "20");
            auto* points = count(c, "points", "Probe grid size", 20);
            c.run = [=, this](latc_context* ctx, Result& res) {
                check(ctx, latc_example31(ctx, static_cast<int>(*n), g_.seed, rho_max->c_str(), *points, &res.p));
                return kExitOk;
            };
        }
        {
            auto& c = add("dio", "Counting function, phi evidence and error bound at one t");
            auto* alpha = param(c, "alpha", "surd:a,b,c,d for (a+b*sqrt(c))/d, or dec:<digits>");
            auto* y = param(c, "y", "Shift y", "0");
            auto* eps = param(c, "eps", "Width eps");
            auto* t = param(c, "t", "Length t");
            auto* q_max = param(c, "q-max", "Largest denominator scanned for phi", "1000000");
            c.run = [=](latc_context* ctx, Result& res) {
                need(*alpha, "alpha");
                need(*eps, "eps");
                need(*t, "t");
                check(ctx, latc_dio(ctx, alpha->c_str(), y->c_str(), eps->c_str(), t->c_str(), q_max->c_str(), &res.p));
                return kExitOk;
            };
        }
        {
            auto& c = add("dio-sweep", "Counting function and error bound over a list of t");
            auto* alpha = param(c, "alpha", "surd:a,b,c,d for (a+b*sqrt(c))/d, or dec:<digits>");
            auto* y = param(c, "y", "Shift y", "0");
            auto* eps = param(c, "eps", "Width eps");
            auto* ts = param(c, "t-list", "JSON array of t values", "[100,1000,10000]");
            auto* q_max = param(c, "q-max", "Largest denominator scanned for phi", "1000000");
            c.run = [=](latc_context* ctx, Result& res) {
                need(*alpha, "alpha");
                need(*eps, "eps");
                check(ctx, latc_dio_sweep(ctx, alpha->c_str(), y->c_str(), eps->c_str(), ts->c_str(), q_max->c_str(),
                                          &res.p));
                return kExitOk;
            };
        }
        {
            auto& c = add("s-sum", "Sum of lambda_1(delta L)^(-n) over the dyadic diagonal family");
            auto* matrix = param(c, "matrix", "Basis as JSON rows, or @file");
            auto* r = param(c, "r", "Exponent radius r");
            c.run = [=](latc_context* ctx, Result& res) {
                Lattice lat;
                load_lattice(ctx, *matrix, lat);
                need(*r, "r");
                check(ctx, latc_s_sum(ctx, lat.p, r->c_str(), &res.p));
                return kExitOk;
            };
        }
    }

    Json resolved_config(const Command& c) const {
        Json cfg = Json::object();
        cfg["command"] = c.app->get_name();
        cfg["precision"] = g_.precision;
        cfg["seed"] = g_.seed;
        cfg["format"] = g_.format;
        cfg["workers"] = g_.workers;
        cfg["node_budget"] = g_.node_budget;
        cfg["box_budget"] = g_.box_budget;
        Json params = Json::object();
        for (const auto& [name, v] : c.params) params[name] = *v;
        for (const auto& [name, v] : c.counts) params[name] = *v;
        for (const auto& [name, v] : c.flags) params[name] = *v;
        cfg["parameters"] = params;
        return cfg;
    }

    int execute() {
        const Command* chosen = nullptr;
        for (const auto& c : commands_)
            if (c.app->parsed()) chosen = &c;
        if (!chosen) throw Failure{kExitInput, "no subcommand given"};

        Context ctx;
        if (g_.precision < 30) throw Failure{kExitInput, "--precision must be at least 30"};
        if (latc_context_new(g_.precision, &ctx.p) != LATC_OK) throw Failure{kExitInput, "cannot create context"};
        check(ctx.p, latc_context_set_workers(ctx.p, g_.workers));
        check(ctx.p, latc_context_set_budgets(ctx.p, g_.node_budget, g_.box_budget));
        check(ctx.p, latc_context_set_run_config(ctx.p, resolved_config(*chosen).dump().c_str()));

        Result res;
        const int code = chosen->run(ctx.p, res);
        const char* text = g_.format == "json" ? latc_result_json(res.p) : latc_result_csv(res.p);
        if (g_.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(g_.out, std::ios::binary);
            if (!out) throw Failure{kExitInput, "cannot write " + g_.out};
            out << text;
        }
        return code;
    }
};

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    return cli.main(argc, argv);
}
