// dnlse: elliptic-background DNLS solution lab.
//
// Subcommands:
//   dnlse run --preset fig1a --out grid.csv
//   dnlse run --config cfg.json
//   dnlse verify --preset all [--out report.json]
//   dnlse presets
//
// Grid sweeps run in parallel; set DNLSE_THREADS to pin the worker count.
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numerical singularity.

#include <complex>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dnls/grid.hpp"
#include "dnls/verify.hpp"

namespace {

using namespace dnls;

struct run_options {
    std::string config_path;
    std::string preset;
    std::string task = "";
    std::string out = "";
    int asym_k = 0;
    std::string asym_sign;
    double xi_min = 0, xi_max = 0, t_min = 0, t_max = 0;
    int n_xi = 0, n_t = 0;
    bool has_grid = false;
};

run_config assemble_config(const run_options& opt) {
    run_config cfg;
    if (!opt.config_path.empty()) {
        cfg = load_config(opt.config_path);
    } else if (!opt.preset.empty()) {
        if (!find_preset(opt.preset)) {
            throw config_error("unknown preset '" + opt.preset + "'");
        }
        cfg.preset = opt.preset;
    } else {
        throw config_error("run: need --config or --preset");
    }
    if (!opt.task.empty()) cfg.task = parse_task(opt.task);
    if (!opt.out.empty()) cfg.output = opt.out;
    if (opt.asym_k > 0) cfg.asym_k = static_cast<std::size_t>(opt.asym_k);
    if (!opt.asym_sign.empty()) {
        if (opt.asym_sign == "plus" || opt.asym_sign == "+") cfg.asym_sign = time_sign::plus;
        else if (opt.asym_sign == "minus" || opt.asym_sign == "-") cfg.asym_sign = time_sign::minus;
        else throw config_error("run: --asym-sign must be plus or minus");
    }
    if (opt.has_grid) {
        grid_spec g{opt.xi_min, opt.xi_max, opt.n_xi, opt.t_min, opt.t_max, opt.n_t};
        if (g.n_xi < 2 || g.n_t < 2) throw config_error("grid counts must be >= 2");
        cfg.grid = g;
    }
    return cfg;
}

void write_csv(const std::string& path, const grid_spec& g, const std::vector<cplx>& u,
               const std::vector<cplx>* u_asym) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open output file '" + path + "'");
    out << "xi,t,re_u,im_u,abs_u";
    if (u_asym) out << ",abs_u_asym,abs_err";
    out << "\n";
    out << std::setprecision(17);
    for (int r = 0; r < g.n_t; ++r) {
        double t = (g.n_t == 1) ? g.t_min : g.t_min + (g.t_max - g.t_min) * r / (g.n_t - 1);
        for (int c = 0; c < g.n_xi; ++c) {
            double xi =
                (g.n_xi == 1) ? g.xi_min : g.xi_min + (g.xi_max - g.xi_min) * c / (g.n_xi - 1);
            cplx v = u[static_cast<std::size_t>(r) * g.n_xi + c];
            out << xi << ',' << t << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v);
            if (u_asym) {
                cplx a = (*u_asym)[static_cast<std::size_t>(r) * g.n_xi + c];
                out << ',' << std::abs(a) << ',' << std::abs(v - a);
            }
            out << "\n";
        }
    }
}

int do_run(const run_options& opt) {
    run_config cfg = assemble_config(opt);
    if (cfg.task == task_t::verify) {
        std::vector<std::string> names =
            cfg.preset ? std::vector<std::string>{*cfg.preset} : all_preset_names();
        suite_report rep = run_suite(names);
        for (const auto& e : rep.entries) {
            std::printf("%-44s measured %.3e threshold %.3e %s\n", e.name.c_str(), e.measured,
                        e.threshold, e.pass ? "PASS" : "FAIL");
        }
        return rep.all_pass() ? 0 : 1;
    }

    problem pr = materialize(cfg);
    sigma_kit kit(pr.bg, pr.spec);
    grid_spec g = pr.grid;

    std::vector<cplx> u;
    std::vector<cplx> u_asym;
    bool with_asym = false;
    switch (cfg.task) {
        case task_t::background:
            u = evaluate_grid(g, [&](double xi, double t) { return pr.bg.u0(xi, t); });
            break;
        case task_t::dress:
        case task_t::figure:
            u = evaluate_grid(g, [&](double xi, double t) { return kit.u_derivative_free(xi, t); });
            break;
        case task_t::asym_line:
        case task_t::asym_region: {
            if (cfg.asym_k < 1 || cfg.asym_k > pr.spec.size()) {
                throw config_error("asym.k out of range for this dressing");
            }
            asymptotic_frame f = build_frame(cfg.asym_k - 1, cfg.asym_sign, pr.spec, pr.bg);
            u = evaluate_grid(g, [&](double xi, double t) { return kit.u_derivative_free(xi, t); });
            if (cfg.task == task_t::asym_line) {
                u_asym = evaluate_grid(
                    g, [&](double xi, double t) { return u_asym_line_free(f, xi, t); });
            } else {
                u_asym = evaluate_grid(
                    g, [&](double xi, double t) { return u_asym_region_free(f, xi, t, pr.bg); });
            }
            with_asym = true;
            break;
        }
        case task_t::verify:
            break; // handled above
    }

    write_csv(cfg.output, g, u, with_asym ? &u_asym : nullptr);

    nlohmann::json summary = derived_summary(pr);
    summary["task"] = to_string(cfg.task);
    summary["grid"] = {{"xi_min", g.xi_min}, {"xi_max", g.xi_max}, {"n_xi", g.n_xi},
                       {"t_min", g.t_min},   {"t_max", g.t_max},   {"n_t", g.n_t}};
    if (with_asym) {
        summary["asym"] = {{"k", cfg.asym_k},
                           {"sign", cfg.asym_sign == time_sign::plus ? "plus" : "minus"}};
    }
    std::ofstream sj(cfg.output + ".summary.json");
    sj << summary.dump(2) << "\n";

    std::printf("wrote %s (%d x %d) and %s.summary.json\n", cfg.output.c_str(), g.n_xi, g.n_t,
                cfg.output.c_str());
    return 0;
}

int do_verify(const std::string& which, const std::string& out_path) {
    std::vector<std::string> names;
    if (which == "all" || which.empty()) {
        names = all_preset_names();
    } else {
        if (!find_preset(which)) throw config_error("unknown preset '" + which + "'");
        names.push_back(which);
    }
    suite_report rep = run_suite(names);
    for (const auto& e : rep.entries) {
        std::printf("%-44s measured %.3e threshold %.3e %s\n", e.name.c_str(), e.measured,
                    e.threshold, e.pass ? "PASS" : "FAIL");
    }
    if (!out_path.empty()) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& e : rep.entries) {
            j.push_back({{"name", e.name},
                         {"measured", e.measured},
                         {"threshold", e.threshold},
                         {"pass", e.pass}});
        }
        std::ofstream out(out_path);
        out << j.dump(2) << "\n";
    }
    std::printf("%zu checks, %s\n", rep.entries.size(), rep.all_pass() ? "all PASS" : "FAILURES");
    return rep.all_pass() ? 0 : 1;
}

int do_presets() {
    std::printf("%-7s %-24s %-26s %-26s %-14s %s\n", "name", "kappa/rho", "omega1/omega3",
                "nodes", "alphas", "notes");
    for (const auto& p : presets()) {
        std::ostringstream kr, om, zs, al;
        kr << p.kappa << "/" << p.rho;
        om << p.omega1 << "/" << p.omega3;
        for (std::size_t i = 0; i < p.zs.size(); ++i) {
            if (i) zs << " ";
            zs << p.zs[i];
        }
        for (std::size_t i = 0; i < p.alphas.size(); ++i) {
            if (i) al << " ";
            al << p.alphas[i];
        }
        std::printf("%-7s %-24s %-26s %-26s %-14s %s\n", p.name.c_str(), kr.str().c_str(),
                    om.str().c_str(), zs.str().c_str(), al.str().c_str(), p.headline.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic-background DNLS solutions: grids, dressing, asymptotics"};
    app.require_subcommand(1);

    run_options opt;
    auto* run_cmd = app.add_subcommand("run", "evaluate a solution over a grid, write CSV");
    run_cmd->add_option("--config", opt.config_path, "JSON config file");
    run_cmd->add_option("--preset", opt.preset, "preset name (see 'presets')");
    run_cmd->add_option("--task", opt.task,
                        "background | dress | asym-line | asym-region | verify | figure");
    run_cmd->add_option("--out", opt.out, "output CSV path");
    run_cmd->add_option("--asym-k", opt.asym_k, "wave index (1-based) for asym tasks");
    run_cmd->add_option("--asym-sign", opt.asym_sign, "plus | minus");
    auto* gx0 = run_cmd->add_option("--xi-min", opt.xi_min);
    auto* gx1 = run_cmd->add_option("--xi-max", opt.xi_max);
    auto* gnx = run_cmd->add_option("--n-xi", opt.n_xi);
    auto* gt0 = run_cmd->add_option("--t-min", opt.t_min);
    auto* gt1 = run_cmd->add_option("--t-max", opt.t_max);
    auto* gnt = run_cmd->add_option("--n-t", opt.n_t);

    std::string verify_preset = "all";
    std::string verify_out = "verify_report.json";
    auto* verify_cmd = app.add_subcommand("verify", "run the property suite");
    verify_cmd->add_option("--preset", verify_preset, "preset name or 'all'");
    verify_cmd->add_option("--out", verify_out, "machine-readable report path");

    auto* presets_cmd = app.add_subcommand("presets", "list the built-in parameter sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            opt.has_grid = gx0->count() || gx1->count() || gnx->count() || gt0->count() ||
                           gt1->count() || gnt->count();
            if (opt.has_grid &&
                !(gx0->count() && gx1->count() && gnx->count() && gt0->count() && gt1->count() &&
                  gnt->count())) {
                throw config_error("grid overrides need all six of "
                                   "--xi-min --xi-max --n-xi --t-min --t-max --n-t");
            }
            return do_run(opt);
        }
        if (verify_cmd->parsed()) return do_verify(verify_preset, verify_out);
        if (presets_cmd->parsed()) return do_presets();
    } catch (const config_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const hypothesis_error& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    }
    return 0;
}
