#ifndef DNLS_SPECTRAL_HPP
#define DNLS_SPECTRAL_HPP

#include <array>
#include <cmath>
#include <complex>

#include "dnls/background.hpp"
#include "dnls/errors.hpp"
#include "dnls/scaled.hpp"
#include "dnls/weierstrass.hpp"

namespace dnls {

using cplx = std::complex<double>;
using mat2 = std::array<std::array<cplx, 2>, 2>;
using smat2 = std::array<std::array<scaled_complex, 2>, 2>;
using svec2 = std::array<scaled_complex, 2>;

/// One uniform spectral parameter z with its companion points and derived
/// quantities. zhat = -kappa-rho-z shares lambda with z and flips y;
/// zcheck = kappa+rho-z* is the conjugate companion.
struct spectral_node {
    cplx z;
    cplx zhat;
    cplx zcheck;
    cplx lambda;
    cplx y;
    scaled_complex d0_z;
    scaled_complex d0_zhat;
    cplx Ij;
    cplx beta;
    double velocity;
    // E(xi, t; .) = exp(e_xi * xi + e_t * t) for z and zhat
    cplx e_xi_z, e_t_z;
    cplx e_xi_zhat, e_t_zhat;

    scaled_complex E_z(double xi, double t) const {
        return scaled_complex::exp_of(e_xi_z * xi + e_t_z * t);
    }
    scaled_complex E_zhat(double xi, double t) const {
        return scaled_complex::exp_of(e_xi_zhat * xi + e_t_zhat * t);
    }
};

/// d0(w) = sqrt(sigma(rho + w) sigma(w + 2 kappa + rho)), principal branch.
inline scaled_complex d0_value(cplx w, const background& bg) {
    return sqrt(bg.lat().sigma(bg.rho() + w) * bg.lat().sigma(w + 2.0 * bg.kappa() + bg.rho()));
}

inline spectral_node make_node(cplx z, const background& bg) {
    const lattice& lat = bg.lat();
    cplx kappa = bg.kappa(), rho = bg.rho();
    spectral_node n;
    n.z = z;
    n.zhat = -kappa - rho - z;
    n.zcheck = kappa + rho - std::conj(z);

    // Branch convention: negative principal root for d0(z), principal for
    // d0(zhat). This pins the relative sign of the two eigenfunction columns;
    // with it an alpha = 1 one-fold dressing has its amplitude dip at the
    // origin rather than half a temporal period away.
    n.d0_z = -d0_value(z, bg);
    n.d0_zhat = d0_value(n.zhat, bg);
    if (n.d0_z.is_zero() || n.d0_zhat.is_zero()) {
        throw config_error("make_node: z sits on a zero of d0");
    }

    n.y = cplx(0.0, 1.0 / 16.0) * (lat.wp(z + rho) - lat.wp(z + kappa));

    scaled_complex num = lat.sigma(z - kappa) * bg.sigma_rho() * n.d0_z;
    scaled_complex den = 2.0 * bg.sqrt_nu0() * lat.sigma(rho + z) * lat.sigma(-rho - kappa) *
                         bg.sigma_kappa() * n.d0_zhat;
    n.lambda = (num / den).to_complex();
    n.lambda = -n.lambda;

    // lambda(z)^2 = mu(z) is forced by the parameterization; a violation means
    // the square-root branches cannot be made consistent.
    cplx mu = bg.mu_at(z);
    if (std::abs(n.lambda * n.lambda - mu) > 1e-8 * (1.0 + std::abs(mu))) {
        throw internal_error("make_node: lambda(z)^2 != mu(z) under either d0 sign");
    }

    n.Ij = bg.I_factor(z);
    n.beta = (kappa + rho + 2.0 * z) * lat.eta1() / lat.omega1() - lat.zeta(kappa + z) -
             lat.zeta(rho + z);
    n.velocity = (std::abs(n.y.real()) < 1e-14 && std::abs(n.beta.real()) < 1e-14)
                     ? 0.0
                     : -16.0 * n.y.real() / n.beta.real();

    cplx half(0.5, 0.0);
    n.e_xi_z = half * (lat.zeta(kappa + z) + lat.zeta(rho + z) - bg.zeta_rho_plus_kappa() -
                       bg.zeta_two_kappa());
    n.e_t_z = -8.0 * (cplx(0.0, bg.alpha4()) + n.y);
    n.e_xi_zhat = half * (lat.zeta(kappa + n.zhat) + lat.zeta(rho + n.zhat) -
                          bg.zeta_rho_plus_kappa() - bg.zeta_two_kappa());
    n.e_t_zhat = -8.0 * (cplx(0.0, bg.alpha4()) - n.y);
    return n;
}

/// Spectral polynomial P(lambda) = -lambda^8 + s1 lambda^6 - s2 lambda^4
/// + s3 lambda^2 - s4; y(z)^2 = P(lambda(z)).
inline cplx spectral_poly_P(cplx lambda, const background& bg) {
    cplx w = lambda * lambda;
    return (((-w + bg.s1()) * w - bg.s2()) * w + bg.s3()) * w - bg.s4();
}

/// Lax pair coefficient matrices.
inline mat2 lax_U(cplx u, cplx lambda) {
    cplx l2 = lambda * lambda;
    return {{{cplx(0.0, -2.0) * l2, cplx(0.0, 2.0) * u * lambda},
             {cplx(0.0, 2.0) * std::conj(u) * lambda, cplx(0.0, 2.0) * l2}}};
}

inline mat2 lax_V(cplx u, cplx u_x, cplx lambda) {
    mat2 U = lax_U(u, lambda);
    cplx f = 4.0 * lambda * lambda - 2.0 * std::norm(u);
    mat2 V;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) V[i][j] = f * U[i][j];
    }
    V[0][1] += -2.0 * u_x * lambda;
    V[1][0] += 2.0 * std::conj(u_x) * lambda;
    return V;
}

/// Fundamental solution matrix of the Lax pair over the elliptic background;
/// columns correspond to z and zhat.
inline smat2 fundamental_matrix(double xi, double t, const spectral_node& n,
                                const background& bg) {
    const lattice& lat = bg.lat();
    cplx diff = n.z - n.zhat;
    if (std::abs(lat.nearest_lattice_point(diff) - diff) < 1e-8) {
        throw degenerate_node_error("fundamental_matrix: z and zhat congruent mod lattice");
    }
    cplx xic(xi, 0.0);
    scaled_complex smk = lat.sigma(xic - bg.kappa());
    if (smk.log_abs() < -23.0) {
        throw pole_error("fundamental_matrix: xi at a pole (sigma(xi - kappa) ~ 0)", xic);
    }
    auto d = [&](cplx arg_xi, cplx w) { return lat.sigma(w - arg_xi); };
    scaled_complex inv_smk = scaled_complex(1.0) / smk;
    scaled_complex smk_neg = lat.sigma(-xic - bg.kappa());
    scaled_complex inv_smk_neg = scaled_complex(1.0) / smk_neg;
    scaled_complex Ez = n.E_z(xi, t);
    scaled_complex Ezh = n.E_zhat(xi, t);
    scaled_complex eF = scaled_complex::exp_of(bg.F(xi, t));
    smat2 phi;
    phi[0][0] = d(xic, n.z) * inv_smk * n.d0_z * Ez;
    phi[0][1] = d(xic, n.zhat) * inv_smk * n.d0_zhat * Ezh;
    phi[1][0] = cplx(0.0, 1.0) * d(-xic, n.zhat) * inv_smk_neg * n.d0_zhat * Ez * eF;
    phi[1][1] = cplx(0.0, 1.0) * d(-xic, n.z) * inv_smk_neg * n.d0_z * Ezh * eF;
    return phi;
}

/// phi = column1 + alpha column2 of the fundamental matrix.
inline svec2 phi_vector(double xi, double t, const spectral_node& n, cplx alpha,
                        const background& bg) {
    smat2 m = fundamental_matrix(xi, t, n, bg);
    return {m[0][0] + alpha * m[0][1], m[1][0] + alpha * m[1][1]};
}

} // namespace dnls

#endif
