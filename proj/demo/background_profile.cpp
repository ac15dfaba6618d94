// Minimal usage example: derive a background, attach one dressing node, and
// print the squared-modulus profile plus the breather amplitude along xi = 0.

#include <complex>
#include <cstdio>

#include "dnls/sigma_forms.hpp"

int main() {
    using cplx = std::complex<double>;
    dnls::lattice lat(4.61, cplx(0.0, -3.14));
    dnls::background bg(cplx(0.0, 1.57), cplx(4.61, -1.57), lat);

    std::printf("nu0 = %.6f, s1 = %.6f, alpha4 = %.6f, class %s/%s\n", bg.nu0(), bg.s1(),
                bg.alpha4(), to_string(bg.re_class()), to_string(bg.modulus_type()));

    dnls::dressing_spec spec;
    spec.nodes.push_back(dnls::make_node((cplx(4.61, 0.0) - cplx(0.0, -3.14)) / 2.0, bg));
    spec.alphas.push_back(cplx(1.0, 0.0));
    dnls::sigma_kit kit(bg, spec);

    std::printf("lambda = %.4f%+.4fi, velocity = %.3f\n", spec.nodes[0].lambda.real(),
                spec.nodes[0].lambda.imag(), spec.nodes[0].velocity);

    std::printf("\n  t      |u0(0,t)|   |u1(0,t)|\n");
    for (double t = 0.0; t <= 16.0; t += 2.0) {
        std::printf("%5.1f   %9.5f   %9.5f\n", t, std::abs(bg.u0(0.0, t)),
                    kit.u_modulus(0.0, t));
    }
    return 0;
}
