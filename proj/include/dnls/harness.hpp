#ifndef DNLS_HARNESS_HPP
#define DNLS_HARNESS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dnls/spectral.hpp"

namespace dnls {

enum class stencil_scheme { central2, central4 };
enum class lax_time_convention { plain_v, v_minus_2s1_u };

struct stencil_config {
    double h_x = 1e-3;
    double h_t = 1e-3;
    stencil_scheme scheme = stencil_scheme::central4;
    double tolerance = 1e-4;
};

namespace detail {

// First and second derivative stencils over 5 samples f(-2h..2h).
inline cplx d1(const std::array<cplx, 5>& f, double h, stencil_scheme s) {
    if (s == stencil_scheme::central2) return (f[3] - f[1]) / (2.0 * h);
    return (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12.0 * h);
}
inline cplx d2(const std::array<cplx, 5>& f, double h, stencil_scheme s) {
    if (s == stencil_scheme::central2) return (f[3] - 2.0 * f[2] + f[1]) / (h * h);
    return (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);
}

constexpr double pole_cutoff = 1e6;

} // namespace detail

/// |i u_t + u_xx + 2i (|u|^2 u)_x| for a black-box sampler u(x, t).
/// Returns nothing when a stencil point hits a solution pole (|u| > 1e6).
template <typename Sampler>
std::optional<double> dnls_residual(Sampler&& u, double x, double t, const stencil_config& cfg) {
    std::array<cplx, 5> ux{}, ut{}, gx{};
    for (int k = -2; k <= 2; ++k) {
        ux[k + 2] = u(x + k * cfg.h_x, t);
        ut[k + 2] = u(x, t + k * cfg.h_t);
        if (std::abs(ux[k + 2]) > detail::pole_cutoff || std::abs(ut[k + 2]) > detail::pole_cutoff) {
            return std::nullopt;
        }
        gx[k + 2] = std::norm(ux[k + 2]) * ux[k + 2];
    }
    cplx i(0.0, 1.0);
    cplx r = i * detail::d1(ut, cfg.h_t, cfg.scheme) + detail::d2(ux, cfg.h_x, cfg.scheme) +
             2.0 * i * detail::d1(gx, cfg.h_x, cfg.scheme);
    return std::abs(r);
}

/// Residual of the linear system for a 2-vector eigenfunction sampler
/// phi(xi, t), with coefficient providers U(xi, t) and V(xi, t). Convention
/// plain_v tests d_t phi = V phi at fixed xi; v_minus_2s1_u tests
/// d_t phi = (V - 2 s1 U) phi, the time flow matching xi = x + 2 s1 t.
/// Returned value is normalized by the largest |phi| on the stencils.
template <typename Phi, typename UP, typename VP>
std::optional<double> lax_residual(Phi&& phi, UP&& Uof, VP&& Vof, lax_time_convention conv,
                                   double s1, double xi, double t, const stencil_config& cfg) {
    std::array<std::array<cplx, 5>, 2> px{}, pt{};
    double scale = 0.0;
    for (int k = -2; k <= 2; ++k) {
        svec2 a = phi(xi + k * cfg.h_x, t);
        svec2 b = phi(xi, t + k * cfg.h_t);
        for (int c = 0; c < 2; ++c) {
            px[c][k + 2] = a[c].to_complex();
            pt[c][k + 2] = b[c].to_complex();
            scale = std::max({scale, std::abs(px[c][k + 2]), std::abs(pt[c][k + 2])});
        }
    }
    if (!(scale > 0.0) || !std::isfinite(scale) || scale > detail::pole_cutoff) {
        return std::nullopt;
    }
    mat2 U = Uof(xi, t);
    mat2 V = Vof(xi, t);
    if (conv == lax_time_convention::v_minus_2s1_u) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) V[i][j] -= 2.0 * s1 * U[i][j];
        }
    }
    cplx phi0[2] = {px[0][2], px[1][2]};
    double rx = 0.0, rt = 0.0;
    for (int c = 0; c < 2; ++c) {
        cplx dx = detail::d1(px[c], cfg.h_x, cfg.scheme);
        cplx dt = detail::d1(pt[c], cfg.h_t, cfg.scheme);
        cplx sx = dx - (U[c][0] * phi0[0] + U[c][1] * phi0[1]);
        cplx st = dt - (V[c][0] * phi0[0] + V[c][1] * phi0[1]);
        rx = std::max(rx, std::abs(sx));
        rt = std::max(rt, std::abs(st));
    }
    return std::max(rx, rt) / scale;
}

/// |U_t - V_x + [U, V]| (max entry) for a potential sampler u(x, t) in
/// laboratory coordinates; u_x inside V is taken by an inner stencil.
template <typename Sampler>
std::optional<double> compatibility_residual(Sampler&& u, cplx lambda, double x, double t,
                                             const stencil_config& cfg) {
    auto u_x = [&](double xx, double tt) {
        std::array<cplx, 5> s{};
        for (int k = -2; k <= 2; ++k) s[k + 2] = u(xx + k * cfg.h_x, tt);
        return detail::d1(s, cfg.h_x, cfg.scheme);
    };
    auto U_at = [&](double xx, double tt) { return lax_U(u(xx, tt), lambda); };
    auto V_at = [&](double xx, double tt) { return lax_V(u(xx, tt), u_x(xx, tt), lambda); };

    std::array<mat2, 5> Ut{}, Vx{};
    for (int k = -2; k <= 2; ++k) {
        Ut[k + 2] = U_at(x, t + k * cfg.h_t);
        Vx[k + 2] = V_at(x + k * cfg.h_x, t);
        for (auto& row : Vx[k + 2]) {
            for (auto& v : row) {
                if (std::abs(v) > detail::pole_cutoff) return std::nullopt;
            }
        }
    }
    mat2 U = Ut[2];
    mat2 V = V_at(x, t);
    double res = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            std::array<cplx, 5> su{}, sv{};
            for (int k = 0; k < 5; ++k) {
                su[k] = Ut[k][i][j];
                sv[k] = Vx[k][i][j];
            }
            cplx comm = U[i][0] * V[0][j] + U[i][1] * V[1][j] - V[i][0] * U[0][j] -
                        V[i][1] * U[1][j];
            cplx r = detail::d1(su, cfg.h_t, cfg.scheme) - detail::d1(sv, cfg.h_x, cfg.scheme) +
                     comm;
            res = std::max(res, std::abs(r));
        }
    }
    return res;
}

/// One line of a verification report.
struct check_entry {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string note;
};

struct suite_report {
    std::vector<check_entry> entries;

    bool all_pass() const {
        for (const auto& e : entries) {
            if (!e.pass) return false;
        }
        return true;
    }
    void add(std::string name, double measured, double threshold, std::string note = {}) {
        entries.push_back(
            {std::move(name), measured, threshold, measured <= threshold, std::move(note)});
    }
    // the comparison reads "measured <= threshold"; for checks of the form
    // "value within +-tol of target" pass |value - target| as the measurement
};

} // namespace dnls

#endif
