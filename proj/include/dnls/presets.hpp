#ifndef DNLS_PRESETS_HPP
#define DNLS_PRESETS_HPP

#include <complex>
#include <string>
#include <vector>

#include "dnls/background.hpp"
#include "dnls/dressing.hpp"
#include "dnls/errors.hpp"

namespace dnls {

/// One named parameter set: the four background parameters, the dressing
/// nodes (z expressions resolved to numbers), and a default evaluation grid
/// chosen to contain the features of the corresponding plot. The grid ranges
/// are reconstructions; the sources specify the parameters, not the axes.
struct preset_def {
    std::string name;
    cplx kappa;
    cplx rho;
    double omega1;
    cplx omega3;
    std::vector<cplx> zs;
    std::vector<cplx> alphas;
    double xi_min, xi_max;
    double t_min, t_max;
    int n_xi = 400, n_t = 400;
    std::string headline;
};

inline const std::vector<preset_def>& presets() {
    static const std::vector<preset_def> table = [] {
        std::vector<preset_def> v;
        {
            double w1 = 4.61;
            cplx w3(0.0, -3.14);
            v.push_back({"fig1a", cplx(0.0, 1.57), cplx(4.61, -1.57), w1, w3,
                         {(w1 - w3) / 2.0}, {cplx(1.0, 0.0)},
                         -9.22, 9.22, -30.3, 30.3, 400, 400,
                         "stationary breather, T ~ 30.3, max |u| ~ 2.02 at (0, T/2), min ~ 0.02 at (0,0)"});
            v.push_back({"fig1b", cplx(0.0, 1.57), cplx(4.61, -1.57), w1, w3,
                         {(w1 - w3) / 2.0}, {cplx(0.05, 0.0)},
                         -9.22, 9.22, -30.3, 30.3, 400, 400,
                         "stationary breather, alpha = 0.05 breaks the origin symmetry"});
        }
        {
            double w1 = 4.47;
            cplx w3(0.0, -3.51);
            v.push_back({"fig2a", cplx(0.0, 1.9), cplx(4.47, -2.2), w1, w3,
                         {(w1 - w3) / 2.0}, {cplx(1.0, 0.0)},
                         -8.94, 8.94, -30.0, 30.0, 400, 400,
                         "travelling breather, origin-symmetric (alpha = 1)"});
            v.push_back({"fig2b", cplx(0.0, 1.9), cplx(4.47, -2.2), w1, w3,
                         {(w1 - w3) / 2.0}, {cplx(0.05, 0.0)},
                         -8.94, 8.94, -30.0, 30.0, 400, 400,
                         "travelling breather, alpha = 0.05"});
        }
        {
            double w1 = 4.6;
            cplx w3(0.0, -3.14);
            v.push_back({"fig3a", cplx(0.0, 1.57), cplx(4.6, -1.57), w1, w3,
                         {w1 / 2.0 - w3 / 2.0, -w1 / 9.0 + w3 / 8.0},
                         {cplx(1.0, 0.0), cplx(1.0, 0.0)},
                         -9.2, 9.2, -8.0, 8.0, 400, 400,
                         "two breathers, one static and one at v1 = -1.72"});
            v.push_back({"fig3b", cplx(0.0, 1.57), cplx(4.6, -1.57), w1, w3,
                         {w1 / 2.0 - 2.0 * w3 / 3.0, -w1 / 9.0 + w3 / 6.0},
                         {cplx(1.0, 0.0), cplx(1.0, 0.0)},
                         -9.2, 9.2, -8.0, 8.0, 400, 400,
                         "two nonstationary breathers"});
        }
        {
            double w1 = 3.25;
            cplx w3(0.0, -3.31);
            v.push_back({"fig4", cplx(0.0, 2.08), cplx(3.25, -1.73), w1, w3,
                         {cplx(1.0, 1.0)}, {cplx(1.0, 0.0)},
                         -9.75, 9.75, -10.0, 10.0, 400, 400,
                         "one breather, z1 = 1+i, with its region asymptotes at t = 0"});
            v.push_back({"fig5", cplx(0.0, 2.08), cplx(3.25, -1.73), w1, w3,
                         {cplx(-0.46, -2.06), cplx(-0.65, 4.41)},
                         {cplx(1.0, 0.0), cplx(1.0, 0.0)},
                         -25.0, 25.0, -30.0, 30.0, 400, 400,
                         "two counter-propagating waves, computed v = (-0.20, 0.62); region asymptotes at |t| = 27"});
            v.push_back({"fig6", cplx(0.0, 2.08), cplx(3.25, -1.73), w1, w3,
                         {cplx(-0.46, -2.06), cplx(-0.65, 4.41)},
                         {cplx(1.0, 0.0), cplx(1.0, 0.0)},
                         -25.0, 25.0, -30.0, 30.0, 400, 400,
                         "fig5 parameters, line asymptotes along L_k at |t| = 27"});
        }
        return v;
    }();
    return table;
}

inline const preset_def* find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

inline background make_background(const preset_def& p) {
    return background(p.kappa, p.rho, lattice(p.omega1, p.omega3));
}

inline dressing_spec make_spec(const preset_def& p, const background& bg) {
    dressing_spec s;
    for (cplx z : p.zs) s.nodes.push_back(make_node(z, bg));
    s.alphas = p.alphas;
    return s;
}

} // namespace dnls

#endif
