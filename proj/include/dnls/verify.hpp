#ifndef DNLS_VERIFY_HPP
#define DNLS_VERIFY_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dnls/asymptotics.hpp"
#include "dnls/harness.hpp"
#include "dnls/presets.hpp"
#include "dnls/sigma_forms.hpp"

namespace dnls {

namespace detail_verify {

inline double rel_scaled(const scaled_complex& a, const scaled_complex& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    scaled_complex d = a - b;
    if (d.is_zero()) return 0.0;
    return std::exp(d.log_abs() - std::max(a.log_abs(), b.log_abs()));
}

inline cplx draw_box(std::mt19937& gen, double re, double im) {
    std::uniform_real_distribution<double> dre(-re, re), dim(-im, im);
    return {dre(gen), dim(gen)};
}

// Weierstrass identity residuals over random draws on one lattice.
inline void lattice_checks(const lattice& l, const std::string& tag, suite_report& rep) {
    std::mt19937 gen(911);
    double w_add = 0.0, w_half1 = 0.0, w_half2 = 0.0, w_quasi = 0.0;
    int done = 0;
    for (int i = 0; i < 400 && done < 100; ++i) {
        cplx t1 = draw_box(gen, 4.0, 2.0), t2 = draw_box(gen, 4.0, 2.0);
        cplx t3 = draw_box(gen, 4.0, 2.0), t4 = draw_box(gen, 4.0, 2.0);
        auto far = [&](cplx w) { return std::abs(l.nearest_lattice_point(w) - w) > 0.1; };
        if (!far(t1) || !far(t2) || !far(2.0 * t1)) continue;
        ++done;
        scaled_complex a = l.sigma(t1 + t2) * l.sigma(t1 - t2) * l.sigma(t3 + t4) * l.sigma(t3 - t4);
        scaled_complex b = l.sigma(t1 + t3) * l.sigma(t1 - t3) * l.sigma(t4 + t2) * l.sigma(t4 - t2);
        scaled_complex c = l.sigma(t3 + t2) * l.sigma(t3 - t2) * l.sigma(t1 + t4) * l.sigma(t1 - t4);
        if (!c.is_zero()) w_add = std::max(w_add, rel_scaled(a + b, c));

        scaled_complex ratio = l.sigma(2.0 * t1) / pow_int(l.sigma(t1), 4);
        cplx wp = l.wp_prime(t1);
        w_half1 = std::max(w_half1, std::abs(wp + ratio.to_complex()) / (1.0 + std::abs(wp)));
        cplx lhs = l.zeta(2.0 * t1);
        cplx rhs = 2.0 * l.zeta(t1) + l.wp_second(t1) / (2.0 * l.wp_prime(t1));
        w_half2 = std::max(w_half2, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));

        cplx q = l.zeta(t1 + 2.0 * l.omega1()) - l.zeta(t1) - 2.0 * l.eta1();
        w_quasi = std::max(w_quasi, std::abs(q));
        scaled_complex qs = l.sigma(t1 + 2.0 * l.omega1()) +
                            l.sigma(t1) * scaled_complex::exp_of(2.0 * l.eta1() * (t1 + l.omega1()));
        if (!qs.is_zero()) {
            w_quasi = std::max(w_quasi, std::exp(qs.log_abs() - l.sigma(t1).log_abs()));
        }
    }
    rep.add(tag + "/sigma-addition-formula", w_add, 1e-9);
    rep.add(tag + "/half-argument-wp-prime", w_half1, 1e-9);
    rep.add(tag + "/half-argument-zeta", w_half2, 1e-9);
    rep.add(tag + "/quasi-periodicity", w_quasi, 1e-9);
    rep.add(tag + "/branch-value-sum", std::abs(l.e1() + l.e2() + l.e3()), 1e-9);
    rep.add(tag + "/legendre-relation", l.legendre_residual(), 1e-9);
}

inline void cauchy_checks(const lattice& l, const std::string& tag, suite_report& rep) {
    std::mt19937 gen(912);
    double worst = 0.0;
    int done = 0;
    for (int rep_i = 0; rep_i < 300 && done < 100; ++rep_i) {
        std::size_t N = 2 + (rep_i % 3);
        cplx tau = draw_box(gen, 1.0, 1.0);
        std::vector<cplx> m(N), n(N);
        for (std::size_t i = 0; i < N; ++i) {
            m[i] = draw_box(gen, 1.2, 1.0);
            n[i] = draw_box(gen, 1.2, 1.0);
        }
        std::vector<std::vector<cplx>> a(N, std::vector<cplx>(N));
        bool skip = false;
        for (std::size_t i = 0; i < N && !skip; ++i) {
            for (std::size_t j = 0; j < N && !skip; ++j) {
                scaled_complex den = l.sigma(m[i] + n[j]);
                if (den.is_zero() || den.log_abs() < -8.0) skip = true;
                else a[i][j] = (l.sigma(tau + m[i] + n[j]) / den).to_complex();
            }
        }
        if (skip) continue;
        ++done;
        cplx brute = a[0][0];
        if (N == 2) brute = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if (N >= 3) {
            // cofactor expansion, small N only
            std::vector<std::vector<cplx>> rows = a;
            std::function<cplx(const std::vector<std::vector<cplx>>&)> det =
                [&](const std::vector<std::vector<cplx>>& mm) -> cplx {
                if (mm.size() == 1) return mm[0][0];
                cplx d = 0.0;
                for (std::size_t j = 0; j < mm.size(); ++j) {
                    std::vector<std::vector<cplx>> minor(mm.size() - 1,
                                                         std::vector<cplx>(mm.size() - 1));
                    for (std::size_t r = 1; r < mm.size(); ++r) {
                        std::size_t cc = 0;
                        for (std::size_t c = 0; c < mm.size(); ++c) {
                            if (c == j) continue;
                            minor[r - 1][cc++] = mm[r][c];
                        }
                    }
                    cplx term = mm[0][j] * det(minor);
                    d += (j % 2 == 0) ? term : -term;
                }
                return d;
            };
            brute = det(rows);
        }
        cplx closed = sigma_cauchy_det(tau, m, n, l).to_complex();
        worst = std::max(worst, std::abs(closed - brute) / (1.0 + std::abs(brute)));
    }
    rep.add(tag + "/sigma-cauchy-determinant", worst, 1e-9);
}

} // namespace detail_verify

/// Execute the per-preset property suites and return one pass/fail entry per
/// check. An empty preset list yields an empty (passing) report.
inline suite_report run_suite(const std::vector<std::string>& preset_names) {
    using detail_verify::rel_scaled;
    suite_report rep;
    std::string last_lattice_tag;
    for (const auto& name : preset_names) {
        const preset_def* p = find_preset(name);
        if (!p) {
            rep.add(name + "/preset-exists", 1.0, 0.0, "unknown preset");
            continue;
        }
        background bg = make_background(*p);
        dressing_spec spec = make_spec(*p, bg);
        sigma_kit kit(bg, spec);
        const lattice& l = bg.lat();

        // one lattice block per distinct lattice
        std::string lat_tag = "lattice(" + std::to_string(l.omega1()) + ")";
        if (lat_tag != last_lattice_tag) {
            detail_verify::lattice_checks(l, name, rep);
            detail_verify::cauchy_checks(l, name, rep);
            last_lattice_tag = lat_tag;
        }

        double worst = 0.0;
        for (cplx r : bg.nu_roots()) worst = std::max(worst, std::abs(bg.R(r)));
        rep.add(name + "/quartic-roots", worst, 1e-8);

        std::mt19937 gen(913);
        std::uniform_real_distribution<double> dxi(p->xi_min / 2.0, p->xi_max / 2.0);
        std::uniform_real_distribution<double> dt(-8.0, 8.0);

        worst = 0.0;
        for (int i = 0; i < 40; ++i) {
            double xi = dxi(gen), t = dt(gen);
            cplx u = bg.u0(xi, t);
            worst = std::max(worst,
                             std::abs(std::norm(u) - bg.nu(xi)) / (1.0 + bg.nu(xi)));
        }
        rep.add(name + "/u0-squared-modulus", worst, 1e-8);

        worst = 0.0;
        double worst_y = 0.0;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            const spectral_node& n = spec.nodes[i];
            cplx mu = bg.mu_at(n.z);
            worst = std::max(worst, std::abs(n.lambda * n.lambda - mu) / (1.0 + std::abs(mu)));
            cplx P = spectral_poly_P(n.lambda, bg);
            worst_y = std::max(worst_y, std::abs(n.y * n.y - P) / (1.0 + std::abs(P)));
        }
        rep.add(name + "/lambda-squared-is-mu", worst, 1e-9);
        rep.add(name + "/y-squared-is-P", worst_y, 1e-9);

        worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            double xi = dxi(gen), t = dt(gen);
            cplx a = kit.u_derivative_form(xi, t);
            cplx b = kit.u_derivative_free(xi, t);
            worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
        }
        rep.add(name + "/form-equivalence", worst, 1e-8);

        double worst_bt0 = 0.0, worst_inf = 0.0;
        for (int i = 0; i < 20; ++i) {
            double x = dxi(gen), t = dt(gen);
            double xi = x + 2.0 * bg.s1() * t;
            cplx closed = kit.u_derivative_free(xi, t);
            worst_bt0 = std::max(worst_bt0, std::abs(bt0(bg, spec, x, t) - closed) /
                                                (1.0 + std::abs(closed)));
            worst_inf = std::max(worst_inf, std::abs(bt_inf(bg, spec, x, t) - closed) /
                                                (1.0 + std::abs(closed)));
        }
        rep.add(name + "/darboux-bt0-route", worst_bt0, 1e-6);
        rep.add(name + "/darboux-btinf-route", worst_inf, 1e-9);

        worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double xi = dxi(gen), t = dt(gen);
            double m = kit.u_modulus(xi, t);
            worst = std::max(worst, std::abs(m - std::abs(kit.u_derivative_free(xi, t))) /
                                        (1.0 + m));
        }
        rep.add(name + "/modulus-route", worst, 1e-9);

        stencil_config cfg;
        auto u_bg = [&](double x, double t) { return bg.u0(x + 2.0 * bg.s1() * t, t); };
        auto u_full = [&](double x, double t) {
            return kit.u_derivative_free(x + 2.0 * bg.s1() * t, t);
        };
        double worst_bg = 0.0, worst_full = 0.0;
        for (int i = 0; i < 60; ++i) {
            double x = dxi(gen), t = dt(gen);
            if (auto r = dnls_residual(u_bg, x, t, cfg)) {
                double au = std::abs(u_bg(x, t));
                worst_bg = std::max(worst_bg, *r / (1.0 + au * au * au));
            }
            if (auto r = dnls_residual(u_full, x, t, cfg)) {
                double au = std::abs(u_full(x, t));
                worst_full = std::max(worst_full, *r / (1.0 + au * au * au));
            }
        }
        rep.add(name + "/pde-residual-background", worst_bg, 1e-4);
        rep.add(name + "/pde-residual-dressed", worst_full, 1e-4);

        bool all_unit = true;
        for (cplx a : spec.alphas) {
            if (std::abs(a - cplx(1.0, 0.0)) > 0.0) all_unit = false;
        }
        if (all_unit) {
            worst = 0.0;
            for (int i = 0; i <= 20; ++i) {
                for (int j = 0; j <= 20; ++j) {
                    double xi = -3.0 + 6.0 * i / 20.0;
                    double t = -4.0 + 8.0 * j / 20.0;
                    cplx a = kit.u_derivative_free(xi, t);
                    cplx b = std::conj(kit.u_derivative_free(-xi, -t));
                    worst = std::max(worst, std::abs(a - b));
                }
            }
            rep.add(name + "/origin-symmetry", worst, 1e-9);
        }
    }
    return rep;
}

inline std::vector<std::string> all_preset_names() {
    std::vector<std::string> names;
    for (const auto& p : presets()) names.push_back(p.name);
    return names;
}

} // namespace dnls

#endif
