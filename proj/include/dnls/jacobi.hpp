#ifndef DNLS_JACOBI_HPP
#define DNLS_JACOBI_HPP

#include <cmath>
#include <limits>
#include <cstddef>

#include "dnls/errors.hpp"

namespace dnls {

struct jacobi_sn_cn {
    double sn;
    double cn;
};

/// Jacobi sn/cn for real argument and modulus k in [0, 1), by the
/// arithmetic-geometric mean descent (Abramowitz & Stegun 16.4).
inline jacobi_sn_cn jacobi_elliptic(double u, double k) {
    if (!(k >= 0.0) || k >= 1.0) {
        throw config_error("jacobi_elliptic: modulus k must lie in [0, 1)");
    }
    if (k < 1e-12) {
        return {std::sin(u), std::cos(u)};
    }
    constexpr std::size_t max_iter = 32;
    double a[max_iter + 1], c[max_iter + 1];
    a[0] = 1.0;
    c[0] = k;
    double b = std::sqrt(1.0 - k * k);
    std::size_t n = 0;
    while (n < max_iter) {
        c[n + 1] = 0.5 * (a[n] - b);
        double an = 0.5 * (a[n] + b);
        b = std::sqrt(a[n] * b);
        a[n + 1] = an;
        ++n;
        // a - b stalls at ~1 ulp once converged; test against that floor
        if (std::abs(c[n]) < 8.0 * std::numeric_limits<double>::epsilon() * a[n]) break;
    }
    if (n == max_iter) throw accuracy_error("jacobi_elliptic: AGM did not converge");
    double phi = std::ldexp(a[n] * u, static_cast<int>(n));
    for (std::size_t i = n; i > 0; --i) {
        phi = 0.5 * (phi + std::asin(std::fmax(-1.0, std::fmin(1.0, c[i] / a[i] * std::sin(phi)))) );
    }
    return {std::sin(phi), std::cos(phi)};
}

} // namespace dnls

#endif
