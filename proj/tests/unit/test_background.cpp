#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "dnls/background.hpp"
#include "oracles.hpp"

using dnls::background;
using dnls::lattice;
using cplx = std::complex<double>;

namespace {

const background& bg_fig1() {
    static background b(cplx(0.0, 1.57), cplx(4.61, -1.57), lattice(4.61, cplx(0.0, -3.14)));
    return b;
}
const background& bg_fig4() {
    static background b(cplx(0.0, 2.08), cplx(3.25, -1.73), lattice(3.25, cplx(0.0, -3.31)));
    return b;
}
const background& bg_type2() {
    static background b(cplx(0.0, 0.8), cplx(0.0, 1.6), lattice(2.0, cplx(0.0, -2.5)));
    return b;
}
const background& bg_type3() {
    static background b(cplx(0.0, 0.9), cplx(2.0, 0.7), lattice(2.0, cplx(1.0, -2.0)));
    return b;
}

} // namespace

TEST_CASE("class and type assignment", "[background]") {
    REQUIRE(bg_fig1().re_class() == dnls::re_class_t::zw);
    REQUIRE(bg_fig1().modulus_type() == dnls::modulus_type_t::type1);
    REQUIRE(bg_fig4().re_class() == dnls::re_class_t::zw);
    REQUIRE(bg_fig4().modulus_type() == dnls::modulus_type_t::type1);
    REQUIRE(bg_type2().re_class() == dnls::re_class_t::zz);
    REQUIRE(bg_type2().modulus_type() == dnls::modulus_type_t::type2);
    REQUIRE(bg_type3().re_class() == dnls::re_class_t::zw);
    REQUIRE(bg_type3().modulus_type() == dnls::modulus_type_t::type3);
}

TEST_CASE("admissibility rejections", "[background]") {
    // generic complex kappa off the admissible lines
    REQUIRE_THROWS_AS(background(cplx(0.3, 0.7), cplx(4.61, -1.57), lattice(4.61, cplx(0.0, -3.14))),
                      dnls::config_error);
    // Re(kappa) = omega1 with Re(rho) = 0 cannot occur
    REQUIRE_THROWS_AS(background(cplx(2.0, 0.8), cplx(0.0, 1.3), lattice(2.0, cplx(0.0, -2.5))),
                      dnls::config_error);
    // nu0 < 0
    REQUIRE_THROWS_AS(background(cplx(0.0, 1.2), cplx(0.0, 0.5), lattice(2.0, cplx(0.0, -2.5))),
                      dnls::config_error);
}

TEST_CASE("frozen regression constants for the fig4/fig5 background", "[background]") {
    const auto& b = bg_fig4();
    REQUIRE(std::abs(b.nu0() - 0.63990731783974790792) < 1e-11);
    REQUIRE(std::abs(b.s1() - 0.19968135944731018589) < 1e-11);
    REQUIRE(std::abs(b.alpha4() + 0.022071513433721905351) < 1e-11);
    REQUIRE(std::abs(b.s2() - 0.015746085768849577875) < 1e-11);
    REQUIRE(std::abs(b.s3() - 0.0021727353085575140223) < 1e-11);
    REQUIRE(std::abs(b.C() + 0.15346040970510282414) < 1e-11);
    const auto& r = b.nu_roots();
    REQUIRE(std::abs(r[0] - cplx(0.63990731783974790792, 0.0)) < 1e-11);
    REQUIRE(std::abs(r[1] - cplx(0.15993972526698802737, 0.0)) < 1e-11);
    REQUIRE(std::abs(r[2] - cplx(-0.15994510939997688607, 0.0)) < 1e-11);
    REQUIRE(std::abs(r[3] - cplx(-1.4386273714959997928, 0.0)) < 1e-11);
    REQUIRE(b.nu0_is_upper());
}

TEST_CASE("fig1 background constants and the two s1 routes", "[background]") {
    const auto& b = bg_fig1();
    REQUIRE(std::abs(b.nu0() - 1.0009017598570419736) < 1e-11);
    REQUIRE(std::abs(b.s1()) < 1e-11);
    REQUIRE(std::abs(b.s2() - 0.023898796667753276679) < 1e-11);
    REQUIRE(std::abs(b.alpha4() + 0.016920683037446237) < 1e-11);
    // s1 = -nu0 - i wp''(kappa) / (2 wp'(kappa))
    const auto& l = b.lat();
    cplx s1_alt = -cplx(b.nu0(), 0.0) - cplx(0.0, 1.0) * l.wp_second(b.kappa()) /
                                            (2.0 * l.wp_prime(b.kappa()));
    REQUIRE(std::abs(s1_alt - cplx(b.s1(), 0.0)) < 1e-10);
    REQUIRE(b.iwp_prime_kappa_positive());
}

TEST_CASE("all four roots annihilate R", "[background]") {
    for (const background* b : {&bg_fig1(), &bg_fig4(), &bg_type2(), &bg_type3()}) {
        for (cplx r : b->nu_roots()) {
            REQUIRE(std::abs(b->R(r)) < 1e-8 * (1.0 + std::abs(r)));
        }
        cplx sum = 0.0;
        for (cplx r : b->nu_roots()) sum += r;
        REQUIRE(std::abs(-sum / 4.0 - cplx(b->s1(), 0.0)) < 1e-8);
        cplx prod = 1.0;
        for (cplx r : b->nu_roots()) prod *= r;
        REQUIRE(std::abs(prod - cplx(b->C() * b->C(), 0.0)) < 1e-8 * (1.0 + std::abs(prod)));
    }
}

TEST_CASE("nu: value at 0, periodicity, and the quartic ODE", "[background]") {
    for (const background* bp : {&bg_fig1(), &bg_fig4(), &bg_type2(), &bg_type3()}) {
        const background& b = *bp;
        REQUIRE(std::abs(b.nu(0.0) - b.nu0()) < 1e-9 * (1.0 + b.nu0()));
        oracle::rng rng(21);
        for (int i = 0; i < 25; ++i) {
            double xi = rng.uniform(-8.0, 8.0);
            REQUIRE(std::abs(b.nu(xi + 2.0 * b.lat().omega1()) - b.nu(xi)) <
                    1e-9 * (1.0 + std::abs(b.nu(xi))));
            double h = 1e-4;
            double d = (b.nu(xi + h) - b.nu(xi - h)) / (2.0 * h);
            double res = std::abs(d * d + b.R(cplx(b.nu(xi), 0.0)).real());
            REQUIRE(res < 1e-6 * (1.0 + d * d));
        }
    }
}

TEST_CASE("nu oscillates between two adjacent roots", "[background]") {
    for (const background* bp : {&bg_fig1(), &bg_type2()}) {
        const background& b = *bp;
        double lo = 1e300, hi = -1e300;
        int n = 4000;
        for (int i = 0; i <= n; ++i) {
            double xi = 2.0 * b.lat().omega1() * i / n;
            double v = b.nu(xi);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const auto& r = b.nu_roots();
        double top = b.nu0_is_upper() ? r[0].real() : r[2].real();
        double bot = b.nu0_is_upper() ? r[1].real() : r[3].real();
        REQUIRE(std::abs(hi - top) < 1e-6 * (1.0 + std::abs(top)));
        REQUIRE(std::abs(lo - bot) < 1e-6 * (1.0 + std::abs(bot)));
    }
}

TEST_CASE("mu: symmetry, real part, imaginary part, value at 0", "[background]") {
    for (const background* bp : {&bg_fig1(), &bg_fig4(), &bg_type3()}) {
        const background& b = *bp;
        oracle::rng rng(22);
        for (int i = 0; i < 25; ++i) {
            double xi = rng.uniform(-6.0, 6.0);
            cplx m = b.mu(xi);
            REQUIRE(std::abs(std::conj(m) - b.mu(-xi)) < 1e-9 * (1.0 + std::abs(m)));
            double nu = b.nu(xi);
            double re_expected =
                (4.0 * b.s2() + 8.0 * b.alpha4() - (nu + b.s1()) * (nu + b.s1())) / (-8.0 * nu);
            REQUIRE(std::abs(m.real() - re_expected) < 1e-8 * (1.0 + std::abs(re_expected)));
            double h = 1e-4;
            double dnu = (b.nu(xi + h) - b.nu(xi - h)) / (2.0 * h);
            cplx lhs = m - std::conj(m);
            cplx rhs = cplx(0.0, -0.25) * dnu / nu;
            REQUIRE(std::abs(lhs - rhs) < 1e-7 * (1.0 + std::abs(rhs)));
        }
        const auto& l = b.lat();
        cplx mu0 = cplx(0.0, 0.25) * (l.zeta(b.kappa()) - l.zeta(b.rho()) +
                                      l.zeta(b.rho() + b.kappa()) - l.zeta(2.0 * b.kappa()));
        REQUIRE(std::abs(b.mu(0.0) - mu0) < 1e-11 * (1.0 + std::abs(mu0)));
    }
    // two-route value of mu(0) on fig1
    REQUIRE(std::abs(bg_fig1().mu(0.0) - cplx(0.13007952581957791331, 0.0)) < 1e-11);
}

TEST_CASE("u0: squared modulus, t-independence, conjugation symmetry", "[background]") {
    for (const background* bp : {&bg_fig1(), &bg_fig4(), &bg_type2(), &bg_type3()}) {
        const background& b = *bp;
        oracle::rng rng(23);
        for (int i = 0; i < 25; ++i) {
            double xi = rng.uniform(-7.0, 7.0);
            double t = rng.uniform(-20.0, 20.0);
            cplx u = b.u0(xi, t);
            double nu = b.nu(xi);
            REQUIRE(std::abs(std::norm(u) - nu) < 1e-8 * (1.0 + nu));
            REQUIRE(std::abs(std::abs(b.u0(xi, t + 7.31)) - std::abs(u)) < 1e-9 * (1.0 + std::abs(u)));
            REQUIRE(std::abs(std::conj(u) - b.u0(-xi, -t)) < 1e-9 * (1.0 + std::abs(u)));
        }
    }
}

TEST_CASE("F: zero at origin, real t-slope zero, class-dependent real part", "[background]") {
    const auto& b = bg_fig1();
    REQUIRE(std::abs(b.F(0.0, 0.0)) == 0.0);
    REQUIRE(std::abs(b.F(0.0, 3.7).real()) < 1e-14);
    double xi = 1.234;
    // ZW class: 2 Re F(xi, 0) = 2 zeta(omega1) xi
    REQUIRE(std::abs(2.0 * b.F(xi, 0.0).real() - 2.0 * b.lat().eta1().real() * xi) < 1e-10);
    const auto& b2 = bg_type2();
    REQUIRE(std::abs(b2.F(xi, 0.0).real()) < 1e-10); // ZZ class: purely imaginary
}

TEST_CASE("jacobi cross-forms match nu", "[background]") {
    for (const background* bp : {&bg_fig1(), &bg_fig4(), &bg_type2(), &bg_type3()}) {
        const background& b = *bp;
        REQUIRE(b.jacobi_cross_residual(0.0) < 1e-8 * (1.0 + b.nu0()));
        for (int i = 1; i <= 50; ++i) {
            double xi = -6.0 + 12.0 * i / 50.0;
            REQUIRE(b.jacobi_cross_residual(xi) < 1e-8 * (1.0 + b.nu0()));
        }
    }
}

TEST_CASE("background with nu(0) at the lower endpoint", "[background]") {
    background b(cplx(0.0, 1.0), cplx(0.0, 2.0), lattice(2.0, cplx(0.0, -2.5)));
    if (!b.nu0_is_upper()) {
        REQUIRE(std::abs(b.nu_roots()[3].real() - b.nu0()) < 1e-9);
    }
    for (int i = 0; i <= 30; ++i) {
        double xi = -3.0 + 6.0 * i / 30.0;
        REQUIRE(b.jacobi_cross_residual(xi) < 1e-8 * (1.0 + b.nu0()));
    }
}

TEST_CASE("travelling-wave law in laboratory coordinates", "[background]") {
    // nu as a function of (x, t) through xi = x + 2 s1 t obeys nu_t = 2 s1 nu_x
    const background& b = bg_fig4();
    REQUIRE(std::abs(b.s1()) > 1e-3); // genuinely moving frame
    auto nu_lab = [&](double x, double t) { return b.nu(x + 2.0 * b.s1() * t); };
    const double h = 1e-4;
    oracle::rng rng(24);
    for (int i = 0; i < 20; ++i) {
        double x = rng.uniform(-5.0, 5.0), t = rng.uniform(-5.0, 5.0);
        double nut = (nu_lab(x, t + h) - nu_lab(x, t - h)) / (2.0 * h);
        double nux = (nu_lab(x + h, t) - nu_lab(x - h, t)) / (2.0 * h);
        REQUIRE(std::abs(nut - 2.0 * b.s1() * nux) < 1e-6 * (1.0 + std::abs(nut)));
    }
}

TEST_CASE("I0 coefficient follows the real-part class", "[background]") {
    REQUIRE(std::abs(bg_fig1().i0_coeff() - 2.0 * bg_fig1().lat().eta1()) < 1e-14);
    REQUIRE(std::abs(bg_type2().i0_coeff()) == 0.0);
    REQUIRE(std::abs(bg_type3().i0_coeff() - 2.0 * bg_type3().lat().eta1()) < 1e-14);
}
