#ifndef DNLS_DRESSING_HPP
#define DNLS_DRESSING_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "dnls/harness.hpp"
#include "dnls/linalg.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// N spectral nodes plus combination coefficients: one N-fold dressing.
struct dressing_spec {
    std::vector<spectral_node> nodes;
    std::vector<cplx> alphas;

    std::size_t size() const { return nodes.size(); }
};

/// Normalized eigenfunction sample: phi with its per-node scale removed.
/// Everything the transformations evaluate is invariant under per-node
/// rescaling, so the samples can be normalized pointwise.
inline std::vector<std::array<cplx, 2>> normalize_phis(const std::vector<svec2>& phis) {
    std::vector<std::array<cplx, 2>> out(phis.size());
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const scaled_complex& a = phis[i][0];
        const scaled_complex& b = phis[i][1];
        const scaled_complex& big = abs_less(a, b) ? b : a;
        scaled_complex inv = scaled_complex(1.0) / big;
        out[i] = {(a * inv).to_complex(), (b * inv).to_complex()};
    }
    return out;
}

struct m_matrix {
    cmatrix entries;
    double condition = 0.0;
};

/// The dressing matrix M_{ij} of the Darboux-Backlund transformation.
inline m_matrix build_M(const std::vector<std::array<cplx, 2>>& phis,
                        const std::vector<cplx>& lambdas, bool want_condition = false) {
    const std::size_t n = phis.size();
    cmatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx lam_i = lambdas[i], lam_j_c = std::conj(lambdas[j]);
            cplx dm = lam_j_c - lam_i, dp = lam_j_c + lam_i;
            double scale = std::abs(lam_i) + std::abs(lam_j_c);
            if (std::abs(dm) < 1e-12 * scale || std::abs(dp) < 1e-12 * scale) {
                throw resonance_error("build_M: spectrum at resonance (lambda_j^* = +-lambda_i)");
            }
            cplx dot = std::conj(phis[j][0]) * phis[i][0] + std::conj(phis[j][1]) * phis[i][1];
            cplx dot3 = std::conj(phis[j][0]) * phis[i][0] - std::conj(phis[j][1]) * phis[i][1];
            M(i, j) = (dot / dm - dot3 / dp) * lam_i * lam_j_c;
        }
    }
    m_matrix out{std::move(M), 0.0};
    if (want_condition && n > 0) out.condition = condition_estimate(out.entries);
    return out;
}

namespace detail {

// s = phi^(2)dagger M^{-1} phi^(1)
inline cplx dressing_inner(const std::vector<std::array<cplx, 2>>& phis,
                           const std::vector<cplx>& lambdas) {
    const std::size_t n = phis.size();
    if (n == 0) return {0.0, 0.0};
    m_matrix M = build_M(phis, lambdas);
    lu_factor lu(M.entries);
    std::vector<cplx> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = phis[i][0];
    auto x = lu.solve(std::move(rhs));
    cplx s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::conj(phis[i][1]) * x[i];
    return s;
}

} // namespace detail

/// BT0: u0^[N] = u + i (phi^(2)dagger M^{-1} phi^(1))_x with the derivative
/// taken by a central difference of step h. phis(x) must yield Lax
/// eigenfunctions at horizontal position x and the common time slice.
template <typename USampler, typename PhiSampler>
cplx bt0_generic(USampler&& u, PhiSampler&& phis, const std::vector<cplx>& lambdas, double x,
                 double t, double h = 1e-4) {
    cplx sp = detail::dressing_inner(normalize_phis(phis(x + h)), lambdas);
    cplx sm = detail::dressing_inner(normalize_phis(phis(x - h)), lambdas);
    return u(x, t) + cplx(0.0, 1.0) * (sp - sm) / (2.0 * h);
}

/// Pieces of the BT-infinity quotient, exposed for the unimodularity checks.
struct bt_inf_parts {
    cplx numerator_factor;   // 1 + 2 phi1+ L+ M^-1 phi1
    cplx denominator_factor; // 1 - 2 phi2+ L+ (M+)^-1 phi2
    cplx offdiag;            // 4 phi2+ (L+)^2 M^-1 phi1
};

inline bt_inf_parts bt_inf_decompose(const std::vector<std::array<cplx, 2>>& phis,
                                     const std::vector<cplx>& lambdas) {
    const std::size_t n = phis.size();
    bt_inf_parts p{{1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}};
    if (n == 0) return p;
    m_matrix M = build_M(phis, lambdas);
    lu_factor lu(M.entries);
    lu_factor lu_adj(M.entries.adjoint());
    std::vector<cplx> phi1(n), phi2(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi1[i] = phis[i][0];
        phi2[i] = phis[i][1];
    }
    auto x1 = lu.solve(phi1);
    auto x2 = lu_adj.solve(phi2);
    cplx a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cplx lc = std::conj(lambdas[i]);
        a += std::conj(phi1[i]) * lc * x1[i];
        b += std::conj(phi2[i]) * lc * x2[i];
        c += std::conj(phi2[i]) * lc * lc * x1[i];
    }
    p.numerator_factor += 2.0 * a;
    p.denominator_factor -= 2.0 * b;
    p.offdiag = 4.0 * c;
    return p;
}

/// BT-infinity: derivative-free form of the dressed solution.
inline cplx bt_inf(cplx u, const std::vector<std::array<cplx, 2>>& phis,
                   const std::vector<cplx>& lambdas) {
    bt_inf_parts p = bt_inf_decompose(phis, lambdas);
    if (std::abs(p.denominator_factor) < 1e-14) {
        throw pole_error("bt_inf: vanishing denominator factor (solution pole)", u);
    }
    return (p.numerator_factor * u + p.offdiag) / p.denominator_factor;
}

/// Modulus shortcut: |u^[N]| = |u + offdiag / numerator_factor|.
inline double bt_modulus(cplx u, const std::vector<std::array<cplx, 2>>& phis,
                         const std::vector<cplx>& lambdas) {
    bt_inf_parts p = bt_inf_decompose(phis, lambdas);
    if (std::abs(p.numerator_factor) < 1e-14) {
        throw pole_error("bt_modulus: vanishing numerator factor", u);
    }
    return std::abs(u + p.offdiag / p.numerator_factor);
}

/// Eigenfunctions of one dressing spec over the elliptic background, sampled
/// at laboratory position x and time t (xi = x + 2 s1 t).
inline std::vector<svec2> elliptic_phis(const background& bg, const dressing_spec& spec, double x,
                                        double t) {
    std::vector<svec2> out(spec.size());
    double xi = x + 2.0 * bg.s1() * t;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        out[i] = phi_vector(xi, t, spec.nodes[i], spec.alphas[i], bg);
    }
    return out;
}

inline std::vector<cplx> spec_lambdas(const dressing_spec& spec) {
    std::vector<cplx> l(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) l[i] = spec.nodes[i].lambda;
    return l;
}

/// BT0 on the elliptic background.
inline cplx bt0(const background& bg, const dressing_spec& spec, double x, double t,
                double h = 1e-4) {
    auto u = [&](double xx, double tt) { return bg.u0(xx + 2.0 * bg.s1() * tt, tt); };
    auto phis = [&](double xx) { return elliptic_phis(bg, spec, xx, t); };
    return bt0_generic(u, phis, spec_lambdas(spec), x, t, h);
}

/// BT0 with one Richardson step on the central difference (h and h/2),
/// cancelling the leading h^2 truncation term.
inline cplx bt0_richardson(const background& bg, const dressing_spec& spec, double x, double t,
                           double h = 1e-4) {
    cplx coarse = bt0(bg, spec, x, t, h);
    cplx fine = bt0(bg, spec, x, t, h / 2.0);
    return (4.0 * fine - coarse) / 3.0;
}

/// BT-infinity on the elliptic background.
inline cplx bt_inf(const background& bg, const dressing_spec& spec, double x, double t) {
    double xi = x + 2.0 * bg.s1() * t;
    return bt_inf(bg.u0(xi, t), normalize_phis(elliptic_phis(bg, spec, x, t)),
                  spec_lambdas(spec));
}

/// Max relative deviation between the two Darboux-Backlund routes over a
/// sample set of laboratory points.
inline double equivalence_report(const background& bg, const dressing_spec& spec,
                                 const std::vector<std::pair<double, double>>& points,
                                 double h = 1e-4) {
    double worst = 0.0;
    for (auto [x, t] : points) {
        cplx a = bt0(bg, spec, x, t, h);
        cplx b = bt_inf(bg, spec, x, t);
        worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
    }
    return worst;
}

} // namespace dnls

#endif
