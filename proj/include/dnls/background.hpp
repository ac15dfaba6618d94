#ifndef DNLS_BACKGROUND_HPP
#define DNLS_BACKGROUND_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "dnls/errors.hpp"
#include "dnls/jacobi.hpp"
#include "dnls/scaled.hpp"
#include "dnls/weierstrass.hpp"

namespace dnls {

enum class re_class_t { zz, zw, ww };
enum class modulus_type_t { type1, type2, type3 };

inline const char* to_string(re_class_t c) {
    switch (c) {
        case re_class_t::zz: return "ZZ";
        case re_class_t::zw: return "ZW";
        default: return "WW";
    }
}
inline const char* to_string(modulus_type_t t) {
    switch (t) {
        case modulus_type_t::type1: return "Type1";
        case modulus_type_t::type2: return "Type2";
        default: return "Type3";
    }
}

/// Elliptic background of the DNLS equation, derived from (kappa, rho) on a
/// period lattice. Holds the squared-modulus quartic data (roots, s-constants,
/// alpha4, C), the real-part class of (kappa, rho), and evaluators for the
/// squared modulus nu, the auxiliary spectrum mu, and the seed solution u0.
class background {
  public:
    using cplx = std::complex<double>;

    background(cplx kappa, cplx rho, lattice lat) : lat_(std::move(lat)), kappa_(kappa), rho_(rho) {
        derive();
    }

    const lattice& lat() const { return lat_; }
    cplx kappa() const { return kappa_; }
    cplx rho() const { return rho_; }
    double nu0() const { return nu0_; }
    const std::array<cplx, 4>& nu_roots() const { return roots_; }
    double s1() const { return s1_; }
    double s2() const { return s2_; }
    double s3() const { return s3_; }
    double s4() const { return s4_; }
    double alpha4() const { return alpha4_; }
    double C() const { return C_; }
    re_class_t re_class() const { return re_class_; }
    modulus_type_t modulus_type() const { return type_; }
    /// True when nu(0) is the top oscillation endpoint (first sorted root).
    bool nu0_is_upper() const { return nu0_upper_; }
    /// Convention report for user-supplied parameters: sign of i wp'(kappa)
    /// and whether C matches the positive square root of the root product.
    bool iwp_prime_kappa_positive() const { return iwpk_positive_; }

    /// Squared modulus nu(xi) = nu0 (wp(xi) - wp(rho)) / (wp(xi) - wp(kappa)).
    double nu(double xi) const { return real_checked(nu_at(cplx(xi, 0.0)), "nu"); }

    // nu in sigma-quotient form: the sigma^2(xi) factors of the two
    // wp-differences cancel, so lattice points are regular.
    cplx nu_at(cplx z) const {
        scaled_complex den = lat_.sigma(z + kappa_) * lat_.sigma(z - kappa_);
        if (den.is_zero() || den.log_abs() < -34.0) {
            throw pole_error("background: nu evaluated at a pole (xi = -+kappa mod lattice)", z);
        }
        scaled_complex num = lat_.sigma(z + rho_) * lat_.sigma(z - rho_);
        scaled_complex ratio = num * sigma_kappa_ * sigma_kappa_ / (den * sigma_rho_ * sigma_rho_);
        return nu0_ * ratio.to_complex();
    }

    /// Auxiliary spectrum mu as a function of the (complexified) argument.
    cplx mu_at(cplx z) const {
        return cplx(0.0, 0.25) *
               (lat_.zeta(kappa_ + z) - lat_.zeta(z + rho_) + zeta_rk_ - zeta_2k_);
    }
    cplx mu(double xi) const { return mu_at(cplx(xi, 0.0)); }

    /// Linear phase F(xi, t) = (zeta(rho+kappa) + zeta(2 kappa)) xi + 16 i alpha4 t.
    cplx F(double xi, double t) const { return F_xi_coeff() * xi + F_t_coeff() * t; }
    cplx F_xi_coeff() const { return zeta_rk_ + zeta_2k_; }
    cplx F_t_coeff() const { return cplx(0.0, 16.0 * alpha4_); }

    /// Seed solution u0(xi, t); |u0|^2 = nu(xi).
    cplx u0(double xi, double t) const {
        scaled_complex s = u0_scaled(xi, t);
        return s.to_complex();
    }

    scaled_complex u0_scaled(double xi, double t) const {
        scaled_complex smk = lat_.sigma(cplx(xi, 0.0) - kappa_);
        if (smk.log_abs() < -23.0) { // |sigma(xi-kappa)| < ~1e-10
            throw pole_error("background: u0 pole (sigma(xi - kappa) ~ 0)", cplx(xi, 0.0));
        }
        scaled_complex num = sqrt_nu0_sigma_k_ * lat_.sigma(cplx(xi, 0.0) + rho_) *
                             lat_.sigma(cplx(xi, 0.0) + kappa_);
        scaled_complex den = sigma_rho_ * smk * smk;
        return num / den * scaled_complex::exp_of(-F(xi, t));
    }

    /// Quartic R(nu); the squared modulus satisfies (d nu/d xi)^2 = -R(nu).
    cplx R(cplx nu) const {
        double a = 6.0 * s1_ * s1_ - 8.0 * s2_ + 48.0 * alpha4_;
        double b = -4.0 * s1_ * s1_ * s1_ + 16.0 * s1_ * s2_ - 64.0 * s3_ - 32.0 * s1_ * alpha4_;
        double c = -s1_ * s1_ + 4.0 * s2_ + 8.0 * alpha4_;
        return ((nu + 4.0 * s1_) * nu + a) * nu * nu - b * nu + c * c;
    }

    /// |nu(xi) - Jacobi cross-form| using the sn form for real root patterns
    /// and the cn form for the complex-pair pattern.
    double jacobi_cross_residual(double xi) const {
        double nu_val = nu(xi);
        double form;
        if (type_ == modulus_type_t::type3) {
            double n1 = roots_[0].real(), n2 = roots_[1].real();
            double re3 = roots_[2].real(), im3 = roots_[2].imag();
            double q1 = (n1 - re3) * (n1 - re3) + im3 * im3;
            double q2 = (n2 - re3) * (n2 - re3) + im3 * im3;
            double th1 = std::sqrt(q2 / q1);
            double th2 = std::pow(q1 * q2, 0.25);
            double th3sq = 0.5 * (1.0 - ((n1 - re3) * (n2 - re3) + im3 * im3) / std::sqrt(q1 * q2));
            double cn = jacobi_elliptic(th2 * xi, std::sqrt(th3sq)).cn;
            form = n1 + (n2 - n1) * (1.0 - cn) / (1.0 + th1 + (th1 - 1.0) * cn);
        } else {
            // labels with nu(0) as the first entry: descending for nu0 = nu1,
            // ascending (exchanged labels) for nu0 = nu4
            std::array<double, 4> l;
            for (int i = 0; i < 4; ++i) {
                l[i] = nu0_upper_ ? roots_[i].real() : roots_[3 - i].real();
            }
            double alpha0 = 0.5 * std::sqrt((l[0] - l[2]) * (l[1] - l[3]));
            double k0 = std::sqrt((l[0] - l[1]) * (l[2] - l[3]) / ((l[0] - l[2]) * (l[1] - l[3])));
            double sn = jacobi_elliptic(alpha0 * xi, k0).sn;
            form = l[3] + (l[0] - l[3]) * (l[1] - l[3]) /
                              ((l[1] - l[3]) + (l[0] - l[1]) * sn * sn);
        }
        return std::abs(nu_val - form);
    }

    // cached pieces shared with the spectral / sigma-form modules
    cplx wp_kappa() const { return wp_kappa_; }
    cplx wp_rho() const { return wp_rho_; }
    cplx zeta_rho_plus_kappa() const { return zeta_rk_; }
    cplx zeta_two_kappa() const { return zeta_2k_; }
    double sqrt_nu0() const { return sqrt_nu0_; }
    const scaled_complex& sigma_kappa() const { return sigma_kappa_; }
    const scaled_complex& sigma_rho() const { return sigma_rho_; }

    /// I0(xi) = exp(i0_coeff * xi) per the real-part class.
    cplx i0_coeff() const {
        switch (re_class_) {
            case re_class_t::zz: return {0.0, 0.0};
            case re_class_t::zw: return 2.0 * lat_.eta1();
            default: return 4.0 * lat_.eta1();
        }
    }

    /// Conjugation factor I_j attached to a spectral parameter z.
    cplx I_factor(cplx z) const {
        cplx zs = std::conj(z);
        switch (re_class_) {
            case re_class_t::zz: return {-1.0, 0.0};
            case re_class_t::zw:
                return std::exp(-2.0 * lat_.eta1() * (kappa_ + rho_ - lat_.omega1() - zs));
            default:
                return -std::exp(-2.0 * lat_.eta1() *
                                 (2.0 * kappa_ + 2.0 * rho_ - 4.0 * lat_.omega1() - 2.0 * zs));
        }
    }

    double real_checked(cplx v, const char* what) const {
        if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v.real()))) {
            throw internal_error(std::string("background: ") + what +
                                 " has a non-negligible imaginary part");
        }
        return v.real();
    }

  private:
    enum class line_class { z, w };

    line_class classify_line(cplx w, const char* name) const {
        double r = std::remainder(w.real(), 2.0 * lat_.omega1());
        double tol = 1e-8 * std::max(1.0, lat_.omega1());
        if (std::abs(r) < tol) return line_class::z;
        if (std::abs(std::abs(r) - lat_.omega1()) < tol) return line_class::w;
        throw config_error(std::string("background: Re(") + name +
                           ") must be 0 or omega1 (mod 2 omega1)");
    }

    void derive() {
        wp_kappa_ = lat_.wp(kappa_);
        wp_rho_ = lat_.wp(rho_);
        cplx wpp_kappa = lat_.wp_prime(kappa_);
        cplx diff = wp_rho_ - wp_kappa_;
        if (std::abs(diff) < 1e-10 * (1.0 + std::abs(wp_rho_))) {
            throw config_error("background: wp(kappa) = wp(rho)");
        }
        for (cplx e : {lat_.e1(), lat_.e2(), lat_.e3()}) {
            if (std::abs(wp_kappa_ - e) < 1e-10 * (1.0 + std::abs(e))) {
                throw config_error("background: wp(kappa) coincides with a branch value");
            }
        }

        auto ck = classify_line(kappa_, "kappa");
        auto cr = classify_line(rho_, "rho");
        if (ck == line_class::w && cr == line_class::z) {
            throw config_error(
                "background: Re(kappa) = omega1 with Re(rho) = 0 does not define an "
                "admissible background");
        }
        re_class_ = (ck == line_class::z)
                        ? (cr == line_class::z ? re_class_t::zz : re_class_t::zw)
                        : re_class_t::ww;

        cplx nu0c = cplx(0.0, 1.0) * wpp_kappa / diff;
        if (std::abs(nu0c.imag()) > 1e-9 * (1.0 + std::abs(nu0c.real()))) {
            throw config_error("background: parameters do not define an admissible "
                               "background (nu0 is not real)");
        }
        if (nu0c.real() < -1e-12) {
            throw config_error("background: parameters do not define an admissible "
                               "background (nu0 < 0)");
        }
        nu0_ = std::max(0.0, nu0c.real());
        iwpk_positive_ = (cplx(0.0, 1.0) * wpp_kappa).real() > 0.0;

        roots_[0] = nu0c;
        const std::array<cplx, 3> es = {lat_.e1(), lat_.e2(), lat_.e3()};
        for (int i = 0; i < 3; ++i) {
            roots_[i + 1] = nu0c + cplx(0.0, 1.0) * wpp_kappa / (wp_kappa_ - es[i]);
        }
        std::sort(roots_.begin(), roots_.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() > b.real();
            return a.imag() > b.imag();
        });
        int n_complex = 0;
        for (cplx r : roots_) {
            if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r.real()))) ++n_complex;
        }
        double root_tol = 1e-7 * (1.0 + std::abs(nu0c));
        nu0_upper_ = std::abs(roots_[0] - nu0c) < root_tol;
        if (!nu0_upper_ && std::abs(roots_[3] - nu0c) > root_tol) {
            throw config_error("background: nu(0) is not an oscillation endpoint; "
                               "parameters are inconsistent");
        }

        if (n_complex >= 2) {
            type_ = modulus_type_t::type3;
        } else if (roots_[3].real() > -1e-9 * (1.0 + nu0_)) {
            type_ = modulus_type_t::type2;
        } else {
            type_ = modulus_type_t::type1;
        }

        // symmetric functions of the roots
        cplx E2 = 0.0, E3 = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                E2 += roots_[i] * roots_[j];
                for (int k = j + 1; k < 4; ++k) E3 += roots_[i] * roots_[j] * roots_[k];
            }
        }
        cplx s1c = -(roots_[0] + roots_[1] + roots_[2] + roots_[3]) / 4.0;
        cplx wpp_rho = lat_.wp_prime(rho_);
        cplx Cc = wpp_rho * wpp_kappa / (diff * diff);
        // R's nu^2 coefficient and the constant term give a linear system for
        // (s2, alpha4); the nu coefficient then yields s3, and s4 = alpha4^2.
        cplx a4c = (E2 - 4.0 * s1c * s1c + 2.0 * Cc) / 64.0;
        cplx s2c = (Cc + s1c * s1c - 8.0 * a4c) / 4.0;
        cplx s3c = (-4.0 * s1c * s1c * s1c + 16.0 * s1c * s2c - 32.0 * s1c * a4c - E3) / 64.0;

        s1_ = real_checked(s1c, "s1");
        C_ = real_checked(Cc, "C");
        alpha4_ = real_checked(a4c, "alpha4");
        s2_ = real_checked(s2c, "s2");
        s3_ = real_checked(s3c, "s3");
        s4_ = alpha4_ * alpha4_;

        zeta_rk_ = lat_.zeta(rho_ + kappa_);
        zeta_2k_ = lat_.zeta(2.0 * kappa_);
        sqrt_nu0_ = std::sqrt(nu0_);
        sigma_kappa_ = lat_.sigma(kappa_);
        sigma_rho_ = lat_.sigma(rho_);
        sqrt_nu0_sigma_k_ = sqrt_nu0_ * sigma_kappa_;
    }

    lattice lat_;
    cplx kappa_, rho_;
    cplx wp_kappa_{}, wp_rho_{};
    std::array<cplx, 4> roots_{};
    double nu0_ = 0.0;
    double s1_ = 0.0, s2_ = 0.0, s3_ = 0.0, s4_ = 0.0;
    double alpha4_ = 0.0, C_ = 0.0;
    re_class_t re_class_ = re_class_t::zz;
    modulus_type_t type_ = modulus_type_t::type1;
    bool nu0_upper_ = true;
    bool iwpk_positive_ = true;
    cplx zeta_rk_{}, zeta_2k_{};
    double sqrt_nu0_ = 0.0;
    scaled_complex sigma_kappa_{}, sigma_rho_{}, sqrt_nu0_sigma_k_{};
};

} // namespace dnls

#endif
