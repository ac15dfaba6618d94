#ifndef DNLS_WEIERSTRASS_HPP
#define DNLS_WEIERSTRASS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "dnls/errors.hpp"
#include "dnls/scaled.hpp"

namespace dnls {

inline constexpr double pi = std::numbers::pi;

/// Weierstrass functions on the lattice {2 m omega1 + 2 n omega3} with
/// omega1 > 0 and omega3 off the real axis.
///
/// Evaluation reduces the argument to the fundamental cell with the
/// quasi-periodicity laws, then sums a theta q-series. The quasi-period
/// exponential factors of sigma are accumulated in the exponent of a
/// scaled_complex, so sigma stays usable for arguments many periods from the
/// origin. wp, wp_prime and zeta are returned as plain complex.
///
/// Internally omega3 is replaced by -omega3 whenever Im(omega3/omega1) < 0;
/// the lattice is unchanged and the nome q = exp(i pi omega3/omega1) then
/// satisfies |q| < 1.
class lattice {
  public:
    using cplx = std::complex<double>;

    static constexpr double pole_guard_radius = 1e-8;
    static constexpr std::size_t max_terms = 64;

    lattice(double omega1, cplx omega3) : om1_(omega1), om3_(omega3) {
        if (!(omega1 > 0.0) || !std::isfinite(omega1) || !std::isfinite(omega3.real()) ||
            !std::isfinite(omega3.imag())) {
            throw config_error("lattice: omega1 must be positive and finite, omega3 finite");
        }
        cplx ratio = omega3 / omega1;
        if (std::abs(ratio.imag()) < 1e-12 * (1.0 + std::abs(ratio.real()))) {
            throw config_error("lattice: degenerate (periods collinear)");
        }
        om3i_ = (ratio.imag() < 0.0) ? -omega3 : omega3;
        tau_ = om3i_ / om1_;
        q_ = std::exp(cplx(0.0, pi) * tau_);
        setup_series();
        eta1_ = -pi * pi / (12.0 * om1_) * th1ppp0_ / th1p0_;
        eta3_ = zeta_reduced(om3i_); // om3 is in the closed cell; no reduction needed
        e1_ = wp(cplx(om1_, 0.0));
        e2_ = wp(om1_ + om3i_);
        e3_ = wp(om3i_);
        g2_ = -4.0 * (e1_ * e2_ + e1_ * e3_ + e2_ * e3_);
        g3_ = 4.0 * e1_ * e2_ * e3_;
    }

    double omega1() const { return om1_; }
    cplx omega3() const { return om3_; }
    cplx omega3_internal() const { return om3i_; }
    cplx tau() const { return tau_; }
    cplx nome() const { return q_; }
    cplx e1() const { return e1_; }
    cplx e2() const { return e2_; }
    cplx e3() const { return e3_; }
    cplx eta1() const { return eta1_; }
    cplx eta3() const { return eta3_; }
    cplx g2() const { return g2_; }
    cplx g3() const { return g3_; }

    /// |eta1 omega3 - eta3 omega1 - i pi/2| on the internal (Im tau > 0)
    /// orientation; a lattice sanity check, ~1e-15 for healthy lattices.
    double legendre_residual() const {
        return std::abs(eta1_ * om3i_ - eta3_ * om1_ - cplx(0.0, pi / 2.0));
    }

    cplx wp(cplx z) const {
        auto red = reduce(z);
        guard_pole(z, red);
        auto t = theta_bundle(red.z0);
        cplx r = (t.d2 * t.d0 - t.d1 * t.d1) / (t.d0 * t.d0);
        double s = pi / (2.0 * om1_);
        return -eta1_ / om1_ - s * s * r;
    }

    cplx wp_prime(cplx z) const {
        auto red = reduce(z);
        guard_pole(z, red);
        auto t = theta_bundle(red.z0);
        cplx num = t.d3 * t.d0 * t.d0 - 3.0 * t.d2 * t.d1 * t.d0 + 2.0 * t.d1 * t.d1 * t.d1;
        double s = pi / (2.0 * om1_);
        return -s * s * s * num / (t.d0 * t.d0 * t.d0);
    }

    /// wp'' = 6 wp^2 - g2/2.
    cplx wp_second(cplx z) const {
        cplx p = wp(z);
        return 6.0 * p * p - 0.5 * g2_;
    }

    cplx zeta(cplx z) const {
        auto red = reduce(z);
        guard_pole(z, red);
        return zeta_reduced(red.z0) + 2.0 * static_cast<double>(red.m) * eta1_ +
               2.0 * static_cast<double>(red.n) * eta3_;
    }

    scaled_complex sigma(cplx z) const {
        auto red = reduce(z);
        // sigma(z0 + 2m w1 + 2n w3) = (-1)^{m+n+mn} sigma(z0) e^{eta (z0 + m w1 + n w3)},
        // eta = 2m eta1 + 2n eta3.
        auto t = theta_bundle(red.z0);
        double mm = static_cast<double>(red.m), nn = static_cast<double>(red.n);
        cplx eta = 2.0 * mm * eta1_ + 2.0 * nn * eta3_;
        cplx expo = eta1_ * red.z0 * red.z0 / (2.0 * om1_) + eta * (red.z0 + mm * om1_ + nn * om3i_);
        // parity of m + n + m n, overflow-free
        bool modd = (red.m % 2) != 0, nodd = (red.n % 2) != 0;
        double sign = ((modd != nodd) != (modd && nodd)) ? -1.0 : 1.0;
        cplx plain = sign * 2.0 * om1_ * t.d0 / (pi * th1p0_);
        return scaled_complex(plain) * scaled_complex::exp_of(expo);
    }

    /// Nearest lattice point to z (by rounded lattice coordinates).
    cplx nearest_lattice_point(cplx z) const {
        auto red = reduce(z);
        return z - red.z0;
    }

  private:
    struct reduced {
        cplx z0;
        long m;
        long n;
    };

    struct thetas {
        cplx d0, d1, d2, d3; // theta1 and v-derivatives, common factor 2 q^{1/4} dropped
    };

    void setup_series() {
        // c_n = (-1)^n q^{n(n+1)}; fixed q^{1/4} prefactor cancels in every ratio used.
        double aq = std::abs(q_);
        if (aq > 0.985) {
            throw accuracy_error("lattice: |q| too close to 1, series would need > 64 terms");
        }
        cplx qsq = q_ * q_;
        cplx pw(1.0, 0.0); // q^{n(n+1)} via ratio q^{2(n+1)}
        cplx step = qsq;   // q^{2}
        n_terms_ = max_terms;
        for (std::size_t n = 0; n < max_terms; ++n) {
            coef_[n] = (n % 2 == 0) ? pw : -pw;
            // growth bound e^{1.1 (n+1/2) |ln q|} covers arguments in the reduced cell
            double m = 2.0 * n + 1.0;
            if (std::abs(pw) * m * m * m * std::pow(aq, -1.1 * (n + 0.5)) < 1e-19) {
                n_terms_ = n + 1;
                break;
            }
            pw *= step;     // * q^{2(n+1)}
            step *= qsq;    // q^{2(n+2)}
        }
        if (n_terms_ == max_terms && aq > 0.5) {
            throw accuracy_error("lattice: theta series not converged within 64 terms");
        }
        th1p0_ = cplx(0.0, 0.0);
        th1ppp0_ = cplx(0.0, 0.0);
        for (std::size_t n = 0; n < n_terms_; ++n) {
            double m = 2.0 * n + 1.0;
            th1p0_ += coef_[n] * m;
            th1ppp0_ -= coef_[n] * m * m * m;
        }
    }

    reduced resolve_coords(cplx z) const {
        double b = z.imag() / (2.0 * om3i_.imag());
        double a = (z.real() - 2.0 * b * om3i_.real()) / (2.0 * om1_);
        if (!(std::abs(a) < 1e9) || !(std::abs(b) < 1e9)) {
            throw config_error("lattice: argument absurdly far from the fundamental cell");
        }
        long m = std::lround(a);
        long n = std::lround(b);
        cplx z0 = z - 2.0 * static_cast<double>(m) * om1_ - 2.0 * static_cast<double>(n) * om3i_;
        return {z0, m, n};
    }

    reduced reduce(cplx z) const {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw config_error("lattice: non-finite argument");
        }
        return resolve_coords(z);
    }

    void guard_pole(cplx z, const reduced& red) const {
        if (std::abs(red.z0) < pole_guard_radius) {
            throw pole_error("lattice: argument within pole guard of a lattice point", z - red.z0);
        }
    }

    cplx zeta_reduced(cplx z0) const {
        auto t = theta_bundle(z0);
        return eta1_ * z0 / om1_ + pi / (2.0 * om1_) * t.d1 / t.d0;
    }

    thetas theta_bundle(cplx z0) const {
        cplx v = pi * z0 / (2.0 * om1_);
        cplx s = std::sin(v), c = std::cos(v);
        cplx s2 = 2.0 * s * c, c2 = c * c - s * s; // sin/cos of 2v
        thetas r{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
        cplx sn = s, cn = c;
        for (std::size_t n = 0; n < n_terms_; ++n) {
            double m = 2.0 * n + 1.0;
            cplx a = coef_[n];
            r.d0 += a * sn;
            r.d1 += a * m * cn;
            r.d2 -= a * m * m * sn;
            r.d3 -= a * m * m * m * cn;
            cplx ns = sn * c2 + cn * s2;
            cplx nc = cn * c2 - sn * s2;
            sn = ns;
            cn = nc;
        }
        return r;
    }

    double om1_;
    cplx om3_;
    cplx om3i_;
    cplx tau_;
    cplx q_;
    cplx e1_, e2_, e3_;
    cplx eta1_, eta3_;
    cplx g2_, g3_;
    std::array<cplx, max_terms> coef_{};
    std::size_t n_terms_ = 0;
    cplx th1p0_{}, th1ppp0_{};
};

} // namespace dnls

#endif
