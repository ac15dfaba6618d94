#ifndef DNLS_ASYMPTOTICS_HPP
#define DNLS_ASYMPTOTICS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "dnls/sigma_forms.hpp"

namespace dnls {

/// Closed product form of det(sigma(tau + m_i + n_j) / sigma(m_i + n_j)).
/// Coincident m's or n's give an exact zero through sigma(m_i - m_j) = 0.
inline scaled_complex sigma_cauchy_det(cplx tau, const std::vector<cplx>& m,
                                       const std::vector<cplx>& n, const lattice& lat) {
    const std::size_t N = m.size();
    if (n.size() != N) throw config_error("sigma_cauchy_det: size mismatch");
    if (N == 0) return scaled_complex(1.0);
    cplx total = tau;
    for (std::size_t i = 0; i < N; ++i) total += m[i] + n[i];
    scaled_complex num = pow_int(lat.sigma(tau), static_cast<long>(N) - 1) * lat.sigma(total);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i + 1; j < N; ++j) {
            num *= lat.sigma(m[i] - m[j]) * lat.sigma(n[i] - n[j]);
        }
    }
    scaled_complex den(1.0);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) den *= lat.sigma(m[i] + n[j]);
    }
    return num / den;
}

enum class time_sign { minus, plus };

/// Frame of the asymptotic one-wave reduction along a propagation line L_k
/// or in a region R_k: the argument shift, the effective combination
/// coefficient, and the constant amplitude factor.
struct asymptotic_frame {
    std::size_t k = 0;
    time_sign sign = time_sign::minus;
    cplx z_shift_line{};
    cplx z_shift_region{};
    cplx delta{};
    cplx alpha_eff{};
    scaled_complex c_line;
    scaled_complex c_region;
    double velocity = 0.0;
    double line_offset = 0.0; // c_k in xi = v_k t - c_k; 0 unless supplied
    // one-node kit of wave k with the effective alpha
    std::shared_ptr<const sigma_kit> wave;
};

inline asymptotic_frame build_frame(std::size_t k, time_sign sign, const dressing_spec& spec,
                                    const background& bg) {
    const std::size_t N = spec.size();
    if (k >= N) throw config_error("build_frame: wave index out of range");
    std::string bad;
    for (std::size_t i = 0; i + 1 < N; ++i) {
        if (!(spec.nodes[i].velocity < spec.nodes[i + 1].velocity)) {
            bad += " " + std::to_string(i) + "," + std::to_string(i + 1);
        }
    }
    if (!bad.empty()) {
        throw hypothesis_error("build_frame: node velocities not strictly increasing at" + bad);
    }
    for (std::size_t i = 0; i < N; ++i) {
        if (!(spec.nodes[i].beta.real() > 0.0)) {
            bad += " " + std::to_string(i);
        }
    }
    if (!bad.empty()) {
        throw hypothesis_error("build_frame: Re(beta) <= 0 at node(s)" + bad);
    }

    const lattice& lat = bg.lat();
    auto r_of = [&](const spectral_node& n) {
        return lat.sigma(bg.kappa() - n.z) / lat.sigma(bg.rho() + 2.0 * bg.kappa() + n.z);
    };
    auto s_of = [&](const spectral_node& n) {
        cplx zs = std::conj(n.z);
        return lat.sigma(bg.kappa() + zs) / lat.sigma(2.0 * bg.kappa() + bg.rho() - zs);
    };

    asymptotic_frame f;
    f.k = k;
    f.sign = sign;
    f.velocity = spec.nodes[k].velocity;

    const spectral_node& nk = spec.nodes[k];
    cplx z_line = 0.0, z_region = 0.0;
    scaled_complex delta(cplx(1.0, 0.0));
    scaled_complex c_line(cplx(1.0, 0.0));
    scaled_complex c_region(cplx(1.0, 0.0));
    for (std::size_t i = 0; i < N; ++i) {
        const spectral_node& ni = spec.nodes[i];
        cplx two_re = ni.z + std::conj(ni.z);
        if (i < k) {
            z_line -= two_re;
            z_region -= two_re;
            delta *= lat.sigma(ni.z - nk.zhat) * lat.sigma(nk.z + std::conj(ni.z)) /
                     (lat.sigma(nk.zhat + std::conj(ni.z)) * lat.sigma(ni.z - nk.z));
            c_line *= s_of(ni) / r_of(ni);
            c_region *= s_of(ni) / r_of(ni);
        } else if (i == k) {
            z_region += two_re;
            c_region *= r_of(ni) / s_of(ni);
        } else {
            z_line += two_re;
            z_region += two_re;
            delta *= lat.sigma(nk.zhat - ni.zhat) * lat.sigma(nk.z + ni.zcheck) /
                     (lat.sigma(nk.zhat + ni.zcheck) * lat.sigma(nk.z - ni.zhat));
            c_line *= r_of(ni) / s_of(ni);
            c_region *= r_of(ni) / s_of(ni);
        }
    }
    if (sign == time_sign::plus) {
        z_line = -z_line;
        z_region = -z_region;
        delta = scaled_complex(1.0) / delta;
        c_line = scaled_complex(1.0) / c_line;
        c_region = scaled_complex(1.0) / c_region;
    }
    f.z_shift_line = z_line;
    f.z_shift_region = z_region;
    f.delta = delta.to_complex();
    f.alpha_eff = spec.alphas[k] * f.delta;
    f.c_line = c_line;
    f.c_region = c_region;
    dressing_spec sub;
    sub.nodes.push_back(spec.nodes[k]);
    sub.alphas.push_back(f.alpha_eff);
    f.wave = std::make_shared<sigma_kit>(bg, std::move(sub));
    return f;
}

/// One-wave asymptote along L_k, derivative form: the one-fold closed form
/// at shifted sigma arguments with the effective alpha, differentiated
/// analytically.
inline cplx u_asym_line_deriv(const asymptotic_frame& f, double xi, double t) {
    const background& bg = f.wave->bg();
    const lattice& lat = bg.lat();
    auto [d1, d1p] = f.wave->entry_d(1, 0, 0, xi, t, f.z_shift_line);
    auto [d2, d2p] = f.wave->entry_d(2, 0, 0, xi, t, f.z_shift_line);
    if (d2.is_zero()) throw pole_error("u_asym_line_deriv: D2 = 0", cplx(xi, t));
    scaled_complex c0 = bg.sqrt_nu0() * bg.sigma_kappa() * lat.sigma(bg.rho() + bg.kappa()) *
                        lat.sigma(2.0 * bg.kappa()) /
                        (bg.sigma_rho() * lat.sigma(bg.rho() + 3.0 * bg.kappa()));
    scaled_complex G = c0 * (d1 / d2) * f.c_line * scaled_complex::exp_of(-bg.F(xi, t));
    cplx dlog = (d1p / d1).to_complex() - (d2p / d2).to_complex() - bg.F_xi_coeff();
    return (G * dlog).to_complex();
}

/// One-wave asymptote along L_k, derivative-free form.
inline cplx u_asym_line_free(const asymptotic_frame& f, double xi, double t) {
    const background& bg = f.wave->bg();
    scaled_complex d3 = f.wave->entry(3, 0, 0, xi, t, f.z_shift_line);
    scaled_complex d4 = f.wave->entry(4, 0, 0, xi, t, f.z_shift_line);
    scaled_complex d5 = f.wave->entry(5, 0, 0, xi, t, f.z_shift_line);
    scaled_complex d6 = f.wave->entry(6, 0, 0, xi, t, f.z_shift_line);
    if (d4.is_zero() || d6.is_zero()) {
        throw pole_error("u_asym_line_free: singular denominator", cplx(xi, t));
    }
    scaled_complex head = -bg.sqrt_nu0() * bg.sigma_kappa() / bg.sigma_rho();
    return (head * (d3 / d4) * (d5 / d6) * f.c_line * scaled_complex::exp_of(-bg.F(xi, t)))
        .to_complex();
}

/// Region asymptote: shifted background, derivative form.
inline cplx u_asym_region_deriv(const asymptotic_frame& f, double xi, double t,
                                const background& bg) {
    const lattice& lat = bg.lat();
    cplx xs = cplx(xi, 0.0) + f.z_shift_region;
    scaled_complex G = -bg.sqrt_nu0() * bg.sigma_kappa() * lat.sigma(bg.rho() + bg.kappa()) *
                       lat.sigma(2.0 * bg.kappa()) * lat.sigma(xs + 2.0 * bg.kappa() + bg.rho()) /
                       (bg.sigma_rho() * lat.sigma(bg.rho() + 3.0 * bg.kappa()) *
                        lat.sigma(xs - bg.kappa())) *
                       f.c_region * scaled_complex::exp_of(-bg.F(xi, t));
    cplx dlog = lat.zeta(xs + 2.0 * bg.kappa() + bg.rho()) - lat.zeta(xs - bg.kappa()) -
                bg.F_xi_coeff();
    return (G * dlog).to_complex();
}

/// Region asymptote: shifted background, derivative-free form.
inline cplx u_asym_region_free(const asymptotic_frame& f, double xi, double t,
                               const background& bg) {
    const lattice& lat = bg.lat();
    cplx xs = cplx(xi, 0.0) + f.z_shift_region;
    scaled_complex smk = lat.sigma(xs - bg.kappa());
    if (smk.log_abs() < -23.0) {
        throw pole_error("u_asym_region_free: shifted background pole", xs);
    }
    scaled_complex v = bg.sqrt_nu0() * bg.sigma_kappa() * lat.sigma(xs + bg.rho()) *
                       lat.sigma(xs + bg.kappa()) /
                       (bg.sigma_rho() * smk * smk) * f.c_region *
                       scaled_complex::exp_of(-bg.F(xi, t));
    return v.to_complex();
}

struct decay_fit_result {
    double rate = 0.0;       // |slope| of log error against t
    double r2 = 0.0;         // quality of the linear fit
    double predicted = 0.0;  // min over i != k of |Re(beta_i) (v_i - v_k)|
    bool floor_limited = false;
};

/// Least-squares decay rate of the line-asymptote error over a set of times.
/// The error at each t is the max deviation over a window around the line.
inline decay_fit_result decay_fit(const asymptotic_frame& f, const dressing_spec& spec,
                                  const sigma_kit& kit, const std::vector<double>& t_samples,
                                  double window = 0.0, std::size_t window_points = 33) {
    if (t_samples.size() < 5) {
        throw config_error("decay_fit: need at least 5 time samples");
    }
    const background& bg = kit.bg();
    if (window <= 0.0) window = 4.0 * bg.lat().omega1(); // two background periods

    decay_fit_result out;
    double pred = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (i == f.k) continue;
        double r = std::abs(spec.nodes[i].beta.real() *
                            (spec.nodes[i].velocity - spec.nodes[f.k].velocity));
        pred = first ? r : std::min(pred, r);
        first = false;
    }
    out.predicted = pred;

    std::vector<double> ts, ys;
    for (double t : t_samples) {
        double centre = f.velocity * t - f.line_offset;
        double err = 0.0;
        for (std::size_t p = 0; p < window_points; ++p) {
            double xi = centre - window / 2.0 +
                        window * static_cast<double>(p) / (window_points - 1);
            cplx full = kit.u_derivative_free(xi, t);
            cplx line = u_asym_line_free(f, xi, t);
            err = std::max(err, std::abs(full - line));
        }
        if (err < 1e-12) {
            out.floor_limited = true;
            continue;
        }
        ts.push_back(t);
        ys.push_back(std::log(err));
    }
    if (ts.size() < 5) {
        out.floor_limited = true;
        return out;
    }
    double n = static_cast<double>(ts.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        sx += ts[i];
        sy += ys[i];
        sxx += ts[i] * ts[i];
        sxy += ts[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    out.rate = std::abs(slope);
    double ss_tot = syy - sy * sy / n;
    double intercept = (sy - slope * sx) / n;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double d = ys[i] - (intercept + slope * ts[i]);
        ss_res += d * d;
    }
    out.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 0.0;
    return out;
}

} // namespace dnls

#endif
