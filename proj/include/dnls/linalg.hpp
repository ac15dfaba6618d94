#ifndef DNLS_LINALG_HPP
#define DNLS_LINALG_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "dnls/errors.hpp"
#include "dnls/scaled.hpp"

namespace dnls {

/// Dense column-count-agnostic complex matrix in row-major order; only the
/// small sizes of the dressing problem (N <= ~16) are intended.
class cmatrix {
  public:
    using cplx = std::complex<double>;

    cmatrix() = default;
    cmatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    cmatrix adjoint() const {
        cmatrix m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < c_; ++j) m(j, i) = std::conj((*this)(i, j));
        }
        return m;
    }

  private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<cplx> a_;
};

/// LU factorization with partial pivoting; throws singular_matrix_error on
/// an exactly singular pivot.
class lu_factor {
  public:
    using cplx = std::complex<double>;

    explicit lu_factor(cmatrix a) : a_(std::move(a)), piv_(a_.rows()), sign_(1.0) {
        const std::size_t n = a_.rows();
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = c;
            double best = std::abs(a_(c, c));
            for (std::size_t r = c + 1; r < n; ++r) {
                double v = std::abs(a_(r, c));
                if (v > best) {
                    best = v;
                    p = r;
                }
            }
            piv_[c] = p;
            if (p != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a_(c, j), a_(p, j));
                sign_ = -sign_;
            }
            if (best == 0.0) {
                throw singular_matrix_error("lu_factor: singular matrix", 0.0, 0.0);
            }
            for (std::size_t r = c + 1; r < n; ++r) {
                cplx f = a_(r, c) / a_(c, c);
                a_(r, c) = f;
                for (std::size_t j = c + 1; j < n; ++j) a_(r, j) -= f * a_(c, j);
            }
        }
    }

    std::vector<cplx> solve(std::vector<cplx> b) const {
        const std::size_t n = a_.rows();
        for (std::size_t c = 0; c < n; ++c) {
            if (piv_[c] != c) std::swap(b[c], b[piv_[c]]);
            for (std::size_t r = c + 1; r < n; ++r) b[r] -= a_(r, c) * b[c];
        }
        for (std::size_t r = n; r-- > 0;) {
            for (std::size_t j = r + 1; j < n; ++j) b[r] -= a_(r, j) * b[j];
            b[r] /= a_(r, r);
        }
        return b;
    }

    cplx det() const {
        cplx d(sign_, 0.0);
        for (std::size_t i = 0; i < a_.rows(); ++i) d *= a_(i, i);
        return d;
    }

    scaled_complex det_scaled() const {
        scaled_complex d(cplx(sign_, 0.0));
        for (std::size_t i = 0; i < a_.rows(); ++i) d *= scaled_complex(a_(i, i));
        return d;
    }

  private:
    cmatrix a_;
    std::vector<std::size_t> piv_;
    double sign_;
};

/// N x N matrix of scaled values, row-major.
struct scaled_matrix {
    std::size_t n = 0;
    std::vector<scaled_complex> a;

    explicit scaled_matrix(std::size_t size) : n(size), a(size * size) {}
    scaled_complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const scaled_complex& operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

namespace detail_linalg {

// Row/column base-B exponents that bring the mantissas into double range.
struct scaling {
    std::vector<std::int64_t> row, col;
    std::int64_t total = 0;
    bool zero_row_or_col = false;
};

inline scaling make_scaling(const scaled_matrix& m) {
    scaling s;
    s.row.assign(m.n, 0);
    s.col.assign(m.n, 0);
    for (std::size_t i = 0; i < m.n; ++i) {
        bool any = false;
        std::int64_t e = 0;
        for (std::size_t j = 0; j < m.n; ++j) {
            if (m(i, j).is_zero()) continue;
            e = any ? std::max(e, m(i, j).exponent()) : m(i, j).exponent();
            any = true;
        }
        if (!any) {
            s.zero_row_or_col = true;
            e = 0;
        }
        s.row[i] = e;
        s.total += e;
    }
    for (std::size_t j = 0; j < m.n; ++j) {
        bool any = false;
        std::int64_t e = 0;
        for (std::size_t i = 0; i < m.n; ++i) {
            if (m(i, j).is_zero()) continue;
            std::int64_t v = m(i, j).exponent() - s.row[i];
            e = any ? std::max(e, v) : v;
            any = true;
        }
        if (!any) {
            s.zero_row_or_col = true;
            e = 0;
        }
        s.col[j] = e;
        s.total += e;
    }
    return s;
}

inline cmatrix apply_scaling(const scaled_matrix& m, const scaling& s) {
    cmatrix out(m.n, m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            scaled_complex v(m(i, j).mantissa(), m(i, j).exponent() - s.row[i] - s.col[j]);
            out(i, j) = v.to_complex();
        }
    }
    return out;
}

} // namespace detail_linalg

/// Determinant of a matrix of scaled values: exponents are factored out of
/// every row and column before an ordinary partial-pivot LU runs on the
/// mantissas, so entries spanning hundreds of orders of magnitude are fine.
inline scaled_complex scaled_det(const scaled_matrix& m) {
    if (m.n == 0) return scaled_complex(1.0);
    auto s = detail_linalg::make_scaling(m);
    if (s.zero_row_or_col) return scaled_complex();
    cmatrix hat = detail_linalg::apply_scaling(m, s);
    scaled_complex d;
    try {
        d = lu_factor(hat).det_scaled();
    } catch (const singular_matrix_error&) {
        return scaled_complex();
    }
    return scaled_complex(d.mantissa(), d.exponent() + s.total);
}

/// tr(A^{-1} A') where both matrices share A's row/column scalings (the
/// scalings cancel inside the trace).
inline std::complex<double> scaled_trace_solve(const scaled_matrix& a, const scaled_matrix& ap) {
    if (a.n == 0) return {0.0, 0.0};
    auto s = detail_linalg::make_scaling(a);
    if (s.zero_row_or_col) {
        throw singular_matrix_error("scaled_trace_solve: singular matrix (zero row/column)", 0.0,
                                    0.0);
    }
    cmatrix ahat = detail_linalg::apply_scaling(a, s);
    cmatrix aphat = detail_linalg::apply_scaling(ap, s);
    lu_factor lu(ahat);
    std::complex<double> tr = 0.0;
    for (std::size_t j = 0; j < a.n; ++j) {
        std::vector<std::complex<double>> col(a.n);
        for (std::size_t i = 0; i < a.n; ++i) col[i] = aphat(i, j);
        auto x = lu.solve(std::move(col));
        tr += x[j];
    }
    return tr;
}

/// Crude 1-norm condition estimate via the explicit inverse; adequate at the
/// dressing sizes.
inline double condition_estimate(const cmatrix& a) {
    const std::size_t n = a.rows();
    double norm_a = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(a(i, j));
        norm_a = std::max(norm_a, s);
    }
    lu_factor lu(a);
    double norm_inv = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::complex<double>> e(n, {0.0, 0.0});
        e[j] = {1.0, 0.0};
        auto col = lu.solve(std::move(e));
        double s = 0.0;
        for (const auto& v : col) s += std::abs(v);
        norm_inv = std::max(norm_inv, s);
    }
    return norm_a * norm_inv;
}

} // namespace dnls

#endif
