#include <catch_amalgamated.hpp>

#include <complex>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "dnls/grid.hpp"
#include "dnls/verify.hpp"

using namespace dnls;

TEST_CASE("presets: count and headline annotations", "[config]") {
    REQUIRE(presets().size() == 9);
    const preset_def* f3 = find_preset("fig3a");
    REQUIRE(f3 != nullptr);
    REQUIRE(f3->headline.find("-1.72") != std::string::npos);
    const preset_def* f4 = find_preset("fig4");
    REQUIRE(f4 != nullptr);
    REQUIRE(f4->zs.size() == 1);
    REQUIRE(std::abs(f4->zs[0] - cplx(1.0, 1.0)) == 0.0);
    REQUIRE(find_preset("fig9") == nullptr);
}

TEST_CASE("every preset materializes and derives cleanly", "[config]") {
    for (const auto& p : presets()) {
        background bg = make_background(p);
        dressing_spec sp = make_spec(p, bg);
        REQUIRE(sp.size() == p.zs.size());
        REQUIRE(bg.nu0() > 0.0);
    }
}

TEST_CASE("config parsing: presets, explicit blocks, exclusivity", "[config]") {
    auto j = nlohmann::json::parse(R"({
        "task": "dress",
        "preset": "fig1a",
        "output": "o.csv"
    })");
    run_config c = parse_config(j);
    REQUIRE(c.preset.has_value());
    REQUIRE(c.task == task_t::dress);
    REQUIRE(c.output == "o.csv");

    auto j2 = nlohmann::json::parse(R"({
        "task": "background",
        "background": {"kappa": [0.0, 1.57], "rho": [4.61, -1.57],
                       "omega1": 4.61, "omega3": [0.0, -3.14]},
        "dressing": [{"z": [2.305, 1.57], "alpha": [1.0, 0.0]}],
        "grid": {"xi_min": -1, "xi_max": 1, "n_xi": 5, "t_min": 0, "t_max": 1, "n_t": 3}
    })");
    run_config c2 = parse_config(j2);
    REQUIRE(!c2.preset.has_value());
    REQUIRE(c2.zs.size() == 1);
    REQUIRE(c2.grid->n_xi == 5);
    problem pr = materialize(c2);
    REQUIRE(pr.spec.size() == 1);

    // preset and explicit blocks are mutually exclusive
    auto j3 = nlohmann::json::parse(R"({
        "preset": "fig1a",
        "background": {"kappa": [0.0, 1.57], "rho": [4.61, -1.57],
                       "omega1": 4.61, "omega3": [0.0, -3.14]}
    })");
    REQUIRE_THROWS_AS(parse_config(j3), config_error);
}

TEST_CASE("config parsing: malformed inputs carry a field diagnostic", "[config]") {
    auto bad1 = nlohmann::json::parse(R"({"task": "warp"})");
    REQUIRE_THROWS_WITH(parse_config(bad1), Catch::Matchers::ContainsSubstring("task"));
    auto bad2 = nlohmann::json::parse(R"({"preset": "fig1a", "grid": {"xi_min": 0, "xi_max": 1,
        "n_xi": 1, "t_min": 0, "t_max": 1, "n_t": 4}})");
    REQUIRE_THROWS_WITH(parse_config(bad2), Catch::Matchers::ContainsSubstring("grid"));
    auto bad3 = nlohmann::json::parse(R"({"preset": "fig1a", "frobnicate": 1})");
    REQUIRE_THROWS_WITH(parse_config(bad3), Catch::Matchers::ContainsSubstring("frobnicate"));
    auto bad4 = nlohmann::json::parse(R"({"background": {"kappa": [0.0], "rho": [0, 0],
        "omega1": 1.0, "omega3": [0, 1]}})");
    REQUIRE_THROWS_WITH(parse_config(bad4), Catch::Matchers::ContainsSubstring("kappa"));
}

TEST_CASE("grid evaluation is deterministic and thread-count independent", "[config]") {
    const preset_def* p = find_preset("fig1a");
    background bg = make_background(*p);
    grid_spec g{-2.0, 2.0, 17, -1.0, 1.0, 9};
    auto f = [&](double xi, double t) { return bg.u0(xi, t); };
    auto a = evaluate_grid(g, f, 1);
    auto b = evaluate_grid(g, f, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i] == b[i]); // bitwise identical
    }
}

TEST_CASE("run_suite: empty input gives an empty passing report", "[config]") {
    suite_report rep = run_suite({});
    REQUIRE(rep.entries.empty());
    REQUIRE(rep.all_pass());
}

TEST_CASE("run_suite on one preset passes every check", "[config]") {
    suite_report rep = run_suite({"fig4"});
    for (const auto& e : rep.entries) {
        CAPTURE(e.name, e.measured, e.threshold);
        REQUIRE(e.pass);
    }
    REQUIRE(rep.entries.size() >= 10);
}

TEST_CASE("perturbing the phase constant breaks the PDE residual", "[config]") {
    // negative control for the residual check: shift the time-phase
    // coefficient of the background by 1e-3
    const preset_def* p = find_preset("fig4");
    background bg = make_background(*p);
    stencil_config cfg;
    auto u_bad = [&](double x, double t) {
        double xi = x + 2.0 * bg.s1() * t;
        return bg.u0(xi, t) * std::exp(cplx(0.0, -16.0 * 1e-3 * t));
    };
    double worst = 0.0;
    for (double x : {0.3, 1.1, 2.4}) {
        auto r = dnls_residual(u_bad, x, 0.8, cfg);
        REQUIRE(r.has_value());
        worst = std::max(worst, *r);
    }
    REQUIRE(worst > 1e-3); // far above the 1e-4 gate
}

TEST_CASE("full property suite over all presets", "[config]") {
    suite_report rep = run_suite(all_preset_names());
    int fails = 0;
    for (const auto& e : rep.entries) {
        if (!e.pass) {
            ++fails;
            WARN(e.name << " measured " << e.measured << " threshold " << e.threshold);
        }
    }
    REQUIRE(fails == 0);
    REQUIRE(rep.entries.size() > 100);
}
