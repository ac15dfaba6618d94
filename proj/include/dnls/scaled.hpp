#ifndef DNLS_SCALED_HPP
#define DNLS_SCALED_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>

namespace dnls {

/// Complex value in mantissa-exponent form: value = mantissa * B^exponent
/// with B = 2^64. The mantissa magnitude is kept in [1, B) unless the value
/// is exactly zero. Products of sigma functions and the exponentials
/// e^{beta xi + ...} overflow double well inside the parameter ranges of
/// interest; this type keeps them exact up to ordinary rounding.
class scaled_complex {
  public:
    using cplx = std::complex<double>;

    static constexpr int base_bits = 64;

    scaled_complex() : m_(0.0, 0.0), e_(0) {}
    explicit scaled_complex(cplx v) : m_(v), e_(0) { normalize(); }
    explicit scaled_complex(double v) : m_(v, 0.0), e_(0) { normalize(); }
    scaled_complex(cplx mantissa, std::int64_t exponent) : m_(mantissa), e_(exponent) { normalize(); }

    /// e^w for complex w, without intermediate overflow.
    static scaled_complex exp_of(cplx w) {
        constexpr double ln_base = base_bits * 0.6931471805599453; // 64 ln 2
        double x = w.real();
        if (!std::isfinite(x)) {
            return scaled_complex(cplx(std::exp(x), 0.0));
        }
        auto e = static_cast<std::int64_t>(std::floor(x / ln_base));
        double r = x - static_cast<double>(e) * ln_base;
        cplx m = std::exp(r) * cplx(std::cos(w.imag()), std::sin(w.imag()));
        return scaled_complex(m, e);
    }

    bool is_zero() const { return m_ == cplx(0.0, 0.0); }
    cplx mantissa() const { return m_; }
    std::int64_t exponent() const { return e_; }

    /// Collapse to a plain complex; overflows to inf / underflows to 0.
    cplx to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        double s = std::ldexp(1.0, static_cast<int>(clamp_shift(e_ * base_bits)));
        return m_ * s;
    }

    /// ln |value|; -inf for zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(m_)) + static_cast<double>(e_) * (base_bits * 0.6931471805599453);
    }

    double arg() const { return std::arg(m_); }

    friend scaled_complex operator*(const scaled_complex& a, const scaled_complex& b) {
        if (a.is_zero() || b.is_zero()) return scaled_complex();
        return scaled_complex(a.m_ * b.m_, a.e_ + b.e_);
    }
    friend scaled_complex operator*(const scaled_complex& a, cplx b) { return a * scaled_complex(b); }
    friend scaled_complex operator*(cplx a, const scaled_complex& b) { return scaled_complex(a) * b; }
    friend scaled_complex operator*(const scaled_complex& a, double b) { return a * scaled_complex(b); }
    friend scaled_complex operator*(double a, const scaled_complex& b) { return scaled_complex(a) * b; }

    friend scaled_complex operator/(const scaled_complex& a, const scaled_complex& b) {
        return scaled_complex(a.m_ / b.m_, a.e_ - b.e_);
    }
    friend scaled_complex operator/(const scaled_complex& a, cplx b) { return a / scaled_complex(b); }
    friend scaled_complex operator/(cplx a, const scaled_complex& b) { return scaled_complex(a) / b; }
    friend scaled_complex operator/(const scaled_complex& a, double b) { return a / scaled_complex(b); }

    scaled_complex operator-() const {
        scaled_complex r = *this;
        r.m_ = -r.m_;
        return r;
    }

    friend scaled_complex operator+(const scaled_complex& a, const scaled_complex& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const scaled_complex& hi = (a.e_ >= b.e_) ? a : b;
        const scaled_complex& lo = (a.e_ >= b.e_) ? b : a;
        std::int64_t d = lo.e_ - hi.e_; // <= 0
        if (d < -2) return hi;          // below double resolution relative to hi
        cplx shifted = lo.m_ * std::ldexp(1.0, static_cast<int>(d * base_bits));
        return scaled_complex(hi.m_ + shifted, hi.e_);
    }
    friend scaled_complex operator-(const scaled_complex& a, const scaled_complex& b) { return a + (-b); }

    scaled_complex& operator*=(const scaled_complex& o) { return *this = *this * o; }
    scaled_complex& operator*=(cplx o) { return *this = *this * o; }
    scaled_complex& operator/=(const scaled_complex& o) { return *this = *this / o; }
    scaled_complex& operator+=(const scaled_complex& o) { return *this = *this + o; }
    scaled_complex& operator-=(const scaled_complex& o) { return *this = *this - o; }

    friend scaled_complex conj(const scaled_complex& a) {
        scaled_complex r = a;
        r.m_ = std::conj(r.m_);
        return r;
    }

    /// Principal square root.
    friend scaled_complex sqrt(const scaled_complex& a) {
        if (a.is_zero()) return scaled_complex();
        cplx m = a.m_;
        std::int64_t e = a.e_;
        if (e % 2 != 0) { // make exponent even, keeping value fixed
            m *= std::ldexp(1.0, base_bits);
            e -= 1;
        }
        return scaled_complex(std::sqrt(m), e / 2);
    }

    /// Integer power (n may be negative).
    friend scaled_complex pow_int(const scaled_complex& a, long n) {
        if (n == 0) return scaled_complex(1.0);
        scaled_complex base = (n > 0) ? a : scaled_complex(1.0) / a;
        unsigned long k = (n > 0) ? static_cast<unsigned long>(n) : static_cast<unsigned long>(-n);
        scaled_complex r(1.0);
        while (k > 0) {
            if (k & 1ul) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    friend bool abs_less(const scaled_complex& a, const scaled_complex& b) {
        if (a.is_zero()) return !b.is_zero();
        if (b.is_zero()) return false;
        if (a.e_ != b.e_) return a.e_ < b.e_;
        return std::abs(a.m_) < std::abs(b.m_);
    }

    friend std::ostream& operator<<(std::ostream& os, const scaled_complex& v) {
        return os << v.m_ << "*B^" << v.e_;
    }

  private:
    static std::int64_t clamp_shift(std::int64_t bits) {
        if (bits > 1100) return 1100;   // -> inf
        if (bits < -1150) return -1150; // -> 0
        return bits;
    }

    void normalize() {
        if (m_ == cplx(0.0, 0.0)) {
            e_ = 0;
            return;
        }
        double a = std::abs(m_);
        if (!std::isfinite(a)) return;
        while (a >= std::ldexp(1.0, base_bits)) {
            m_ = cplx(std::ldexp(m_.real(), -base_bits), std::ldexp(m_.imag(), -base_bits));
            e_ += 1;
            a = std::abs(m_);
        }
        while (a < 1.0 && a > 0.0) {
            m_ = cplx(std::ldexp(m_.real(), base_bits), std::ldexp(m_.imag(), base_bits));
            e_ -= 1;
            a = std::abs(m_);
        }
    }

    cplx m_;
    std::int64_t e_;
};

} // namespace dnls

#endif
