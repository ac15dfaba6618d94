#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dnls/harness.hpp"
#include "oracles.hpp"

using namespace dnls;

namespace {

const background& bg_fig1() {
    static background b(cplx(0.0, 1.57), cplx(4.61, -1.57), lattice(4.61, cplx(0.0, -3.14)));
    return b;
}
const background& bg_fig45() {
    static background b(cplx(0.0, 2.08), cplx(3.25, -1.73), lattice(3.25, cplx(0.0, -3.31)));
    return b;
}

// background as a function of laboratory coordinates
auto u0_lab(const background& bg) {
    return [&bg](double x, double t) { return bg.u0(x + 2.0 * bg.s1() * t, t); };
}

} // namespace

TEST_CASE("background solves the DNLS equation", "[harness]") {
    stencil_config cfg;
    for (const background* bp : {&bg_fig1(), &bg_fig45()}) {
        const background& bg = *bp;
        auto u = u0_lab(bg);
        oracle::rng rng(41);
        int checked = 0;
        for (int i = 0; i < 100; ++i) {
            double x = rng.uniform(-8.0, 8.0), t = rng.uniform(-15.0, 15.0);
            auto r = dnls_residual(u, x, t, cfg);
            if (!r) continue;
            ++checked;
            double au = std::abs(u(x, t));
            REQUIRE(*r < 1e-5 * (1.0 + au * au * au));
        }
        REQUIRE(checked >= 95);
    }
}

TEST_CASE("residual of zero and of a plane wave", "[harness]") {
    stencil_config cfg;
    auto zero = [](double, double) { return cplx(0.0, 0.0); };
    REQUIRE(*dnls_residual(zero, 0.3, 0.4, cfg) == 0.0);

    // u = a exp(i(kx - w t)) with w = k^2 kills the linear part; what is left
    // is |2 i (|u|^2 u)_x| = 2 a^3 k
    double a = 0.31, k = 1.7, w = k * k;
    auto pw = [&](double x, double t) { return a * std::exp(cplx(0.0, k * x - w * t)); };
    auto r = dnls_residual(pw, 0.83, -0.2, cfg);
    REQUIRE(std::abs(*r - 2.0 * a * a * a * k) < 1e-6);
}

TEST_CASE("central-4 residual improves like h^4", "[harness]") {
    const background& bg = bg_fig45();
    auto u = u0_lab(bg);
    // pick a point where the residual is dominated by truncation error
    double x = 1.234, t = 0.456;
    stencil_config big;
    big.h_x = big.h_t = 0.04; // large enough to stay above the roundoff floor
    stencil_config small = big;
    small.h_x = small.h_t = 0.02;
    double rb = *dnls_residual(u, x, t, big);
    double rs = *dnls_residual(u, x, t, small);
    REQUIRE(rb / rs > 10.0); // ideal ratio 16
}

TEST_CASE("pole skipping reports instead of polluting", "[harness]") {
    stencil_config cfg;
    auto spiky = [](double x, double) {
        return std::abs(x) < 1e-3 ? cplx(1e9, 0.0) : cplx(1.0, 0.0);
    };
    REQUIRE(!dnls_residual(spiky, 0.0, 0.0, cfg).has_value());
    REQUIRE(dnls_residual(spiky, 5.0, 0.0, cfg).has_value());
}

TEST_CASE("lax residual selects the time convention", "[harness]") {
    const background& bg = bg_fig45();
    spectral_node n = make_node(cplx(1.0, 1.0), bg);
    auto phi = [&](double xi, double t) { return phi_vector(xi, t, n, cplx(1.0, 0.0), bg); };
    auto Uof = [&](double xi, double t) { return lax_U(bg.u0(xi, t), n.lambda); };
    stencil_config cfg;
    auto u0x = [&](double xi, double t) {
        std::array<cplx, 5> s{};
        for (int k = -2; k <= 2; ++k) s[k + 2] = bg.u0(xi + k * 1e-4, t);
        return detail::d1(s, 1e-4, stencil_scheme::central4);
    };
    auto Vof = [&](double xi, double t) { return lax_V(bg.u0(xi, t), u0x(xi, t), n.lambda); };

    oracle::rng rng(42);
    for (int i = 0; i < 10; ++i) {
        double xi = rng.uniform(-3.0, 3.0), t = rng.uniform(-2.0, 2.0);
        auto good = lax_residual(phi, Uof, Vof, lax_time_convention::v_minus_2s1_u, bg.s1(), xi,
                                 t, cfg);
        REQUIRE(good.has_value());
        REQUIRE(*good < 1e-5);
        auto bad =
            lax_residual(phi, Uof, Vof, lax_time_convention::plain_v, bg.s1(), xi, t, cfg);
        REQUIRE(*bad > 1e-2); // wrong convention misses by O(1)
    }
}

TEST_CASE("lambda = 0 degenerates the spatial part", "[harness]") {
    stencil_config cfg;
    auto constant = [](double, double) {
        return svec2{scaled_complex(cplx(0.7, 0.1)), scaled_complex(cplx(-0.2, 0.4))};
    };
    auto Uof = [](double, double) { return lax_U(cplx(1.0, 0.0), cplx(0.0, 0.0)); };
    auto Vof = [](double, double) { return lax_V(cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0)); };
    auto r = lax_residual(constant, Uof, Vof, lax_time_convention::plain_v, 0.0, 0.1, 0.2, cfg);
    REQUIRE(*r < 1e-12);
}

TEST_CASE("zero-curvature compatibility on the background", "[harness]") {
    const background& bg = bg_fig45();
    auto u = u0_lab(bg);
    stencil_config cfg;
    oracle::rng rng(43);
    for (int i = 0; i < 8; ++i) {
        double x = rng.uniform(-3.0, 3.0), t = rng.uniform(-2.0, 2.0);
        cplx lam = rng.box(-0.6, 0.6, -0.6, 0.6);
        auto r = compatibility_residual(u, lam, x, t, cfg);
        REQUIRE(r.has_value());
        REQUIRE(*r < 1e-4);
    }
}

TEST_CASE("suite report bookkeeping", "[harness]") {
    suite_report rep;
    rep.add("a", 0.5, 1.0);
    REQUIRE(rep.all_pass());
    rep.add("b", 2.0, 1.0, "deliberate");
    REQUIRE(!rep.all_pass());
    REQUIRE(rep.entries.size() == 2);
    REQUIRE(rep.entries[1].note == "deliberate");
}
