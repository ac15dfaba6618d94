#ifndef DNLS_SIGMA_FORMS_HPP
#define DNLS_SIGMA_FORMS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dnls/dressing.hpp"
#include "dnls/linalg.hpp"

namespace dnls {

/// Evaluator for the compact closed forms of the N-fold dressed solution:
/// the derivative form (determinant ratio B1/B2 under d/dxi) and the
/// derivative-free form (product of the ratios B3/B4 and B5/B6), plus the
/// modulus shortcut through B5/B6.
///
/// Every matrix entry is a four-branch sum over (m, n) in {0,1}^2; each
/// branch is one sigma factor with a xi-dependent argument times a constant
/// sigma/d0/I bundle and an exponential linear in xi and t. The constants
/// are precomputed here; evaluation per point is a handful of sigma calls.
class sigma_kit {
  public:
    sigma_kit(background bg, dressing_spec spec) : bg_(std::move(bg)), spec_(std::move(spec)) {
        build();
    }

    const background& bg() const { return bg_; }
    const dressing_spec& spec() const { return spec_; }
    std::size_t size() const { return spec_.size(); }

    /// r and s of the entry formulas, cached per node.
    const scaled_complex& r_of(std::size_t i) const { return r_[i]; }
    const scaled_complex& s_of(std::size_t i) const { return s_[i]; }

    /// Entry of B^(s) (s = 1..6). shift displaces the sigma arguments and
    /// I0 (but not the exponentials); alpha_over overrides the combination
    /// coefficients. Both service the asymptotic frames.
    scaled_complex entry(int s, std::size_t i, std::size_t j, double xi, double t,
                         cplx shift = {0.0, 0.0},
                         const std::vector<cplx>* alpha_over = nullptr) const {
        scaled_complex acc;
        for (int mn = 0; mn < 4; ++mn) {
            acc += term_value(term_at(s, i, j, mn), xi, t, shift, alpha_over, i, j);
        }
        return acc;
    }

    /// Entry and its xi-derivative.
    std::pair<scaled_complex, scaled_complex> entry_d(int s, std::size_t i, std::size_t j,
                                                      double xi, double t, cplx shift = {0.0, 0.0},
                                                      const std::vector<cplx>* alpha_over =
                                                          nullptr) const {
        scaled_complex v, d;
        for (int mn = 0; mn < 4; ++mn) {
            const term& tm = term_at(s, i, j, mn);
            scaled_complex val = term_value(tm, xi, t, shift, alpha_over, i, j);
            v += val;
            cplx logderiv = -bg_.lat().zeta(tm.c - shift - xi) + tm.a;
            d += val * logderiv;
        }
        return {v, d};
    }

    /// Derivative route: analytic xi-derivative of the determinant
    /// ratio via the trace identity.
    cplx u_derivative_form(double xi, double t) const {
        const std::size_t n = size();
        scaled_matrix B1(n), B2(n), B1p(n), B2p(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                auto [v1, d1] = entry_d(1, i, j, xi, t);
                auto [v2, d2] = entry_d(2, i, j, xi, t);
                B1(i, j) = v1;
                B1p(i, j) = d1;
                B2(i, j) = v2;
                B2p(i, j) = d2;
            }
        }
        scaled_complex det1 = scaled_det(B1);
        scaled_complex det2 = scaled_det(B2);
        if (det2.is_zero()) {
            throw pole_error("u_derivative_form: det B2 = 0 (solution pole)", cplx(xi, t));
        }
        const lattice& lat = bg_.lat();
        cplx xic(xi, 0.0);
        cplx dlog = static_cast<double>(1 - static_cast<long>(n)) *
                        (lat.zeta(xic + bg_.rho() + 2.0 * bg_.kappa()) -
                         lat.zeta(xic - bg_.kappa())) -
                    bg_.F_xi_coeff();
        if (n > 0) {
            dlog += scaled_trace_solve(B1, B1p);
            dlog -= scaled_trace_solve(B2, B2p);
        }
        scaled_complex G = G_prefactor(xi) * (det1 / det2) * scaled_complex::exp_of(-bg_.F(xi, t));
        return (G * dlog).to_complex();
    }

    /// The undifferentiated ratio G of the derivative form (for the
    /// numerical-derivative fallback and tests).
    cplx G_value(double xi, double t) const {
        const std::size_t n = size();
        scaled_matrix B1(n), B2(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                B1(i, j) = entry(1, i, j, xi, t);
                B2(i, j) = entry(2, i, j, xi, t);
            }
        }
        scaled_complex det2 = scaled_det(B2);
        if (det2.is_zero()) throw pole_error("G_value: det B2 = 0", cplx(xi, t));
        return (G_prefactor(xi) * (scaled_det(B1) / det2) * scaled_complex::exp_of(-bg_.F(xi, t)))
            .to_complex();
    }

    /// Five-point numerical fallback for the derivative form.
    cplx u_derivative_form_numeric(double xi, double t, double h = 1e-4) const {
        cplx f2 = G_value(xi + 2.0 * h, t), f1 = G_value(xi + h, t);
        cplx b1 = G_value(xi - h, t), b2 = G_value(xi - 2.0 * h, t);
        return (-f2 + 8.0 * f1 - 8.0 * b1 + b2) / (12.0 * h);
    }

    /// Derivative-free route: product of the two determinant ratios.
    cplx u_derivative_free(double xi, double t) const {
        const std::size_t n = size();
        scaled_matrix B3(n), B4(n), B5(n), B6(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                B3(i, j) = entry(3, i, j, xi, t);
                B4(i, j) = entry(4, i, j, xi, t);
                B5(i, j) = entry(5, i, j, xi, t);
                B6(i, j) = entry(6, i, j, xi, t);
            }
        }
        scaled_complex det4 = scaled_det(B4);
        scaled_complex det6 = scaled_det(B6);
        if (det4.is_zero() || det6.is_zero()) {
            throw pole_error("u_derivative_free: singular denominator determinant", cplx(xi, t));
        }
        const lattice& lat = bg_.lat();
        cplx xic(xi, 0.0);
        scaled_complex smk = lat.sigma(xic - bg_.kappa());
        scaled_complex head = pow_int(
            -(smk * smk) / (lat.sigma(xic + bg_.kappa()) * lat.sigma(xic + bg_.rho())),
            static_cast<long>(n));
        scaled_complex u0s = bg_.u0_scaled(xi, t);
        return (head * u0s * (scaled_det(B3) / det4) * (scaled_det(B5) / det6)).to_complex();
    }

    /// |u_N| through the B5/B6 ratio alone.
    double u_modulus(double xi, double t) const {
        const std::size_t n = size();
        scaled_matrix B5(n), B6(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                B5(i, j) = entry(5, i, j, xi, t);
                B6(i, j) = entry(6, i, j, xi, t);
            }
        }
        scaled_complex det6 = scaled_det(B6);
        if (det6.is_zero()) throw pole_error("u_modulus: det B6 = 0", cplx(xi, t));
        const lattice& lat = bg_.lat();
        cplx xic(xi, 0.0);
        scaled_complex v = bg_.sqrt_nu0() * bg_.sigma_kappa() / bg_.sigma_rho() *
                           pow_int(lat.sigma(xic - bg_.kappa()) / lat.sigma(xic + bg_.rho()),
                                   static_cast<long>(n) - 1) *
                           (scaled_det(B5) / det6) * scaled_complex::exp_of(-bg_.F(xi, t));
        return std::exp(v.log_abs());
    }

  private:
    struct term {
        scaled_complex K; // constant bundle: signs, sigma constants, d0, I_j^p, r/s
        cplx c;           // xi-dependent factor is sigma(c - xi)
        cplx a;           // exponential: exp(a xi + b t); a includes n * i0 coefficient
        cplx b;
        int m = 0, n = 0; // branch indices (alpha_i^m, alpha_j*^n)
    };

    const term& term_at(int s, std::size_t i, std::size_t j, int mn) const {
        return terms_[s - 1][(i * size() + j) * 4 + mn];
    }

    scaled_complex term_value(const term& tm, double xi, double t, cplx shift,
                              const std::vector<cplx>* alpha_over, std::size_t i,
                              std::size_t j) const {
        scaled_complex v = tm.K * bg_.lat().sigma(tm.c - shift - xi) *
                           scaled_complex::exp_of(tm.a * xi + tm.b * t +
                                                  static_cast<double>(tm.n) * i0c_ * shift);
        if (v.is_zero()) return v;
        if (alpha_over) {
            // remove the baked-in alpha powers, apply the overriding ones
            const cplx ai = spec_.alphas[i], aj = std::conj(spec_.alphas[j]);
            const cplx oi = (*alpha_over)[i], oj = std::conj((*alpha_over)[j]);
            cplx f(1.0, 0.0);
            for (int k = 0; k < tm.m; ++k) f *= oi;
            for (int k = 0; k < tm.n; ++k) f *= oj;
            cplx g(1.0, 0.0);
            for (int k = 0; k < tm.m; ++k) g *= ai;
            for (int k = 0; k < tm.n; ++k) g *= aj;
            if (g == cplx(0.0, 0.0)) {
                throw internal_error("sigma_kit: cannot override a zero alpha");
            }
            v *= f / g;
        }
        return v;
    }

    scaled_complex G_prefactor(double xi) const {
        const lattice& lat = bg_.lat();
        cplx xic(xi, 0.0);
        scaled_complex ratio =
            -lat.sigma(xic + bg_.rho() + 2.0 * bg_.kappa()) / lat.sigma(xic - bg_.kappa());
        return pow_int(ratio, 1 - static_cast<long>(size())) * c0_;
    }

    void build() {
        const lattice& lat = bg_.lat();
        const cplx kappa = bg_.kappa(), rho = bg_.rho();
        const std::size_t n = size();
        i0c_ = bg_.i0_coeff();
        c0_ = bg_.sqrt_nu0() * bg_.sigma_kappa() * lat.sigma(rho + kappa) *
              lat.sigma(2.0 * kappa) /
              (bg_.sigma_rho() * lat.sigma(rho + 3.0 * kappa));
        r_.resize(n);
        s_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            cplx z = spec_.nodes[i].z;
            cplx zs = std::conj(z);
            r_[i] = lat.sigma(kappa - z) / lat.sigma(rho + 2.0 * kappa + z);
            s_[i] = lat.sigma(kappa + zs) / lat.sigma(2.0 * kappa + rho - zs);
        }
        for (int s = 1; s <= 6; ++s) {
            terms_[s - 1].resize(n * n * 4);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    for (int m = 0; m < 2; ++m) {
                        for (int nn = 0; nn < 2; ++nn) {
                            terms_[s - 1][(i * n + j) * 4 + (m * 2 + nn)] =
                                make_term(s, i, j, m, nn);
                        }
                    }
                }
            }
        }
    }

    term make_term(int s, std::size_t i, std::size_t j, int m, int n) const {
        const lattice& lat = bg_.lat();
        const cplx kappa = bg_.kappa(), rho = bg_.rho();
        const spectral_node& ni = spec_.nodes[i];
        const spectral_node& nj = spec_.nodes[j];
        const cplx tri = (m == 0) ? ni.z : ni.zhat;                      // first slot
        const cplx dot = (n == 0) ? std::conj(nj.z) : nj.zcheck;         // second slot

        term tm;
        tm.m = m;
        tm.n = n;

        // sign (-1)^n and alpha powers
        scaled_complex K(cplx((n == 0) ? 1.0 : -1.0, 0.0));
        for (int k = 0; k < m; ++k) K *= spec_.alphas[i];
        for (int k = 0; k < n; ++k) K *= std::conj(spec_.alphas[j]);

        // I_j power: n for odd s, 1-n for even s and the derivative-route pair
        int p = (s == 3 || s == 5) ? n : 1 - n;
        for (int k = 0; k < p; ++k) K *= nj.Ij;

        // d0 factors; the first/second slot pattern depends on s
        bool first_hat, second_hat; // true -> zhat-type argument at m(n) = 0
        switch (s) {
            case 1:
            case 2:
            case 4: first_hat = false; second_hat = true; break;
            case 3: first_hat = true; second_hat = false; break;
            case 5: first_hat = false; second_hat = false; break;
            default: first_hat = true; second_hat = true; break; // s == 6
        }
        bool use_hat_i = (m == 0) ? first_hat : !first_hat;
        bool use_hat_j = (n == 0) ? second_hat : !second_hat;
        K *= use_hat_i ? ni.d0_zhat : ni.d0_z;
        K *= conj(use_hat_j ? nj.d0_zhat : nj.d0_z);

        // r/s factors of the derivative-route numerator matrix
        if (s == 1) {
            K *= (m == 0) ? scaled_complex(1.0) / r_[i] : r_[i];
            K *= (n == 0) ? s_[j] : scaled_complex(1.0) / s_[j];
        }

        // sigma constants of Sigma^(s) and the xi-argument offset
        scaled_complex den = lat.sigma(tri + dot);
        if (den.is_zero() || den.log_abs() < -30.0) {
            throw degenerate_node_error("sigma_kit: degenerate node pair (" + std::to_string(i) +
                                        ", " + std::to_string(j) + ")");
        }
        switch (s) {
            case 1:
                K *= -lat.sigma(tri - kappa) * lat.sigma(rho + 2.0 * kappa - dot);
                tm.c = tri + dot - rho - 2.0 * kappa;
                break;
            case 2:
                K *= lat.sigma(tri - kappa) * lat.sigma(rho + 2.0 * kappa - dot);
                tm.c = tri + dot + kappa;
                break;
            case 3:
                K *= -lat.sigma(-2.0 * kappa - rho - tri) * lat.sigma(kappa + dot);
                tm.c = tri + dot - kappa;
                break;
            case 4:
                K *= -lat.sigma(2.0 * kappa + rho - dot) * lat.sigma(kappa - tri);
                tm.c = tri + dot + kappa;
                break;
            case 5: {
                scaled_complex den2 = lat.sigma(dot - rho);
                if (den2.is_zero() || den2.log_abs() < -30.0) {
                    throw degenerate_node_error("sigma_kit: node pair (" + std::to_string(i) +
                                                ", " + std::to_string(j) +
                                                ") hits a zero of sigma(. - rho)");
                }
                K *= lat.sigma(kappa - dot) * lat.sigma(kappa + dot) * lat.sigma(tri + rho) / den2;
                tm.c = tri + dot - rho;
                break;
            }
            default: // s == 6
                K *= -lat.sigma(2.0 * kappa + rho - dot) * lat.sigma(-rho - tri);
                tm.c = tri + dot + kappa;
                break;
        }
        K /= den;
        tm.K = K;

        // exponentials E(., .; slot_i) E^*(., .; slot_j) and I0^n
        tm.a = ((m == 0) ? ni.e_xi_z : ni.e_xi_zhat) +
               std::conj((n == 0) ? nj.e_xi_z : nj.e_xi_zhat) + static_cast<double>(n) * i0c_;
        tm.b = ((m == 0) ? ni.e_t_z : ni.e_t_zhat) +
               std::conj((n == 0) ? nj.e_t_z : nj.e_t_zhat);
        return tm;
    }

    background bg_;
    dressing_spec spec_;
    std::vector<term> terms_[6];
    std::vector<scaled_complex> r_, s_;
    scaled_complex c0_;
    cplx i0c_{};
};

} // namespace dnls

#endif
