#ifndef DNLS_CONFIG_HPP
#define DNLS_CONFIG_HPP

#include <complex>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnls/asymptotics.hpp"
#include "dnls/presets.hpp"

namespace dnls {

enum class task_t { background, dress, asym_line, asym_region, verify, figure };

inline const char* to_string(task_t t) {
    switch (t) {
        case task_t::background: return "background";
        case task_t::dress: return "dress";
        case task_t::asym_line: return "asym-line";
        case task_t::asym_region: return "asym-region";
        case task_t::verify: return "verify";
        default: return "figure";
    }
}

struct grid_spec {
    double xi_min = -10.0, xi_max = 10.0;
    int n_xi = 400;
    double t_min = -10.0, t_max = 10.0;
    int n_t = 400;
};

/// Parsed run configuration: either a preset name or explicit background +
/// dressing blocks, one task, an optional grid override, and output paths.
struct run_config {
    task_t task = task_t::dress;
    std::optional<std::string> preset;
    std::optional<cplx> kappa, rho, omega3;
    std::optional<double> omega1;
    std::vector<cplx> zs;
    std::vector<cplx> alphas;
    std::optional<grid_spec> grid;
    std::size_t asym_k = 1; // 1-based wave index for asym tasks
    time_sign asym_sign = time_sign::plus;
    std::string output = "grid.csv";
};

namespace detail_config {

inline cplx parse_cplx(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw config_error("config: field '" + field + "' must be a [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace detail_config

inline task_t parse_task(const std::string& s) {
    if (s == "background") return task_t::background;
    if (s == "dress") return task_t::dress;
    if (s == "asym-line") return task_t::asym_line;
    if (s == "asym-region") return task_t::asym_region;
    if (s == "verify") return task_t::verify;
    if (s == "figure") return task_t::figure;
    throw config_error("config: unknown task '" + s + "'");
}

inline run_config parse_config(const nlohmann::json& j) {
    using detail_config::parse_cplx;
    run_config c;
    if (!j.is_object()) throw config_error("config: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key != "task" && key != "preset" && key != "background" && key != "dressing" &&
            key != "grid" && key != "asym" && key != "output") {
            throw config_error("config: unknown field '" + key + "'");
        }
    }
    if (j.contains("task")) {
        if (!j["task"].is_string()) throw config_error("config: 'task' must be a string");
        c.task = parse_task(j["task"].get<std::string>());
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw config_error("config: 'output' must be a string");
        c.output = j["output"].get<std::string>();
    }
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw config_error("config: 'preset' must be a string");
        c.preset = j["preset"].get<std::string>();
        if (!find_preset(*c.preset)) {
            throw config_error("config: unknown preset '" + *c.preset + "'");
        }
    }
    if (j.contains("background")) {
        const auto& b = j["background"];
        if (!b.is_object()) throw config_error("config: 'background' must be an object");
        for (const char* f : {"kappa", "rho", "omega1", "omega3"}) {
            if (!b.contains(f)) {
                throw config_error(std::string("config: background block misses '") + f + "'");
            }
        }
        c.kappa = parse_cplx(b["kappa"], "background.kappa");
        c.rho = parse_cplx(b["rho"], "background.rho");
        if (!b["omega1"].is_number()) throw config_error("config: background.omega1 must be a number");
        c.omega1 = b["omega1"].get<double>();
        c.omega3 = parse_cplx(b["omega3"], "background.omega3");
    }
    if (j.contains("dressing")) {
        const auto& d = j["dressing"];
        if (!d.is_array()) throw config_error("config: 'dressing' must be an array");
        for (std::size_t i = 0; i < d.size(); ++i) {
            const auto& node = d[i];
            if (!node.is_object() || !node.contains("z") || !node.contains("alpha")) {
                throw config_error("config: dressing[" + std::to_string(i) +
                                   "] needs 'z' and 'alpha'");
            }
            c.zs.push_back(parse_cplx(node["z"], "dressing.z"));
            c.alphas.push_back(parse_cplx(node["alpha"], "dressing.alpha"));
        }
    }
    if (c.preset && (c.kappa || !c.zs.empty())) {
        throw config_error("config: 'preset' and explicit background/dressing blocks are "
                           "mutually exclusive");
    }
    if (!c.preset && !c.kappa && c.task != task_t::verify) {
        throw config_error("config: need either 'preset' or a 'background' block");
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object()) throw config_error("config: 'grid' must be an object");
        grid_spec gs;
        for (const char* f : {"xi_min", "xi_max", "n_xi", "t_min", "t_max", "n_t"}) {
            if (!g.contains(f) || !g[f].is_number()) {
                throw config_error(std::string("config: grid field '") + f +
                                   "' missing or not a number");
            }
        }
        gs.xi_min = g["xi_min"].get<double>();
        gs.xi_max = g["xi_max"].get<double>();
        gs.n_xi = g["n_xi"].get<int>();
        gs.t_min = g["t_min"].get<double>();
        gs.t_max = g["t_max"].get<double>();
        gs.n_t = g["n_t"].get<int>();
        if (gs.n_xi < 2 || gs.n_t < 2) throw config_error("config: grid counts must be >= 2");
        if (!(gs.xi_max >= gs.xi_min) || !(gs.t_max >= gs.t_min)) {
            throw config_error("config: grid ranges must be ordered");
        }
        c.grid = gs;
    }
    if (j.contains("asym")) {
        const auto& a = j["asym"];
        if (!a.is_object()) throw config_error("config: 'asym' must be an object");
        if (a.contains("k")) {
            if (!a["k"].is_number_integer() || a["k"].get<int>() < 1) {
                throw config_error("config: asym.k must be a positive integer");
            }
            c.asym_k = static_cast<std::size_t>(a["k"].get<int>());
        }
        if (a.contains("sign")) {
            std::string s = a["sign"].get<std::string>();
            if (s == "plus" || s == "+") c.asym_sign = time_sign::plus;
            else if (s == "minus" || s == "-") c.asym_sign = time_sign::minus;
            else throw config_error("config: asym.sign must be 'plus' or 'minus'");
        }
    }
    return c;
}

inline run_config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("config: JSON parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

/// Materialized problem: background, dressing, grid.
struct problem {
    background bg;
    dressing_spec spec;
    grid_spec grid;
    std::string name;
};

inline problem materialize(const run_config& c) {
    if (c.preset) {
        const preset_def* p = find_preset(*c.preset);
        background bg = make_background(*p);
        dressing_spec sp = make_spec(*p, bg);
        grid_spec g;
        if (c.grid) {
            g = *c.grid;
        } else {
            g = {p->xi_min, p->xi_max, p->n_xi, p->t_min, p->t_max, p->n_t};
        }
        return problem{std::move(bg), std::move(sp), g, *c.preset};
    }
    background bg(*c.kappa, *c.rho, lattice(*c.omega1, *c.omega3));
    dressing_spec sp;
    for (std::size_t i = 0; i < c.zs.size(); ++i) {
        sp.nodes.push_back(make_node(c.zs[i], bg));
        sp.alphas.push_back(c.alphas[i]);
    }
    grid_spec g = c.grid ? *c.grid : grid_spec{};
    return problem{std::move(bg), std::move(sp), g, "custom"};
}

/// Echo of the fully derived background (and nodes) for the sidecar summary.
inline nlohmann::json derived_summary(const problem& pr) {
    nlohmann::json j;
    auto put_cplx = [](cplx v) { return nlohmann::json::array({v.real(), v.imag()}); };
    const background& bg = pr.bg;
    j["name"] = pr.name;
    j["background"] = {
        {"kappa", put_cplx(bg.kappa())},
        {"rho", put_cplx(bg.rho())},
        {"omega1", bg.lat().omega1()},
        {"omega3", put_cplx(bg.lat().omega3())},
        {"nu0", bg.nu0()},
        {"nu_roots", {put_cplx(bg.nu_roots()[0]), put_cplx(bg.nu_roots()[1]),
                      put_cplx(bg.nu_roots()[2]), put_cplx(bg.nu_roots()[3])}},
        {"s1", bg.s1()},
        {"s2", bg.s2()},
        {"s3", bg.s3()},
        {"s4", bg.s4()},
        {"alpha4", bg.alpha4()},
        {"C", bg.C()},
        {"re_class", to_string(bg.re_class())},
        {"modulus_type", to_string(bg.modulus_type())},
        {"conventions", {{"iwp_prime_kappa_positive", bg.iwp_prime_kappa_positive()},
                         {"nu0_is_upper", bg.nu0_is_upper()}}},
    };
    j["nodes"] = nlohmann::json::array();
    for (std::size_t i = 0; i < pr.spec.size(); ++i) {
        const spectral_node& n = pr.spec.nodes[i];
        j["nodes"].push_back({
            {"z", put_cplx(n.z)},
            {"alpha", put_cplx(pr.spec.alphas[i])},
            {"lambda", put_cplx(n.lambda)},
            {"y", put_cplx(n.y)},
            {"beta", put_cplx(n.beta)},
            {"velocity", n.velocity},
        });
    }
    return j;
}

} // namespace dnls

#endif
