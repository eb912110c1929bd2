// Hörmander/Mihlin checks for a few symbols and the decay of the j = 0 kernel of m ≡ 1.

#include <cstdio>

#include "qhsf.hpp"

using namespace qhsf;

int main() {
    std::printf("%-22s %14s %10s %14s %10s\n", "symbol", "Hormander", "diverges", "Mihlin", "diverges");
    for (const Symbol& m : {constant_symbol(1.0), power_symbol(1.0), imaginary_power_symbol(1.0), rational_symbol(1.0),
                            exp_symbol(0.5)}) {
        const HormanderReport h = hormander_dyadic_norm(m, 1);
        const MihlinReport mi = mihlin_sup_norm(m);
        std::printf("%-22s %14.6g %10s %14.6g %10s\n", m.descriptor.c_str(), h.value, h.divergent ? "yes" : "no",
                    mi.value, mi.divergent ? "yes" : "no");
    }

    const QuadratureSpec spec = build_spec(Tier::standard);
    const PlancherelWeight w =
        calibrate_plancherel(RadialFunction::gaussian(), make_grid(GridShape::inversion_shape()), spec).weight;
    const SpectralMap map = SpectralMap::from_oracle(KernelPlan{}.n_max);
    const KernelGrid K = dyadic_kernel(constant_symbol(1.0), 0, lp_build(-12, 12), map, w);
    const KernelDecayReport rep = kernel_decay_report(K, {6, 11, 16});
    std::printf("\nkernel j=0: %.2f decades of |x|, CZ constant sup|K||x|^Q = %.4g\n", rep.decades, rep.cz_constant);
    for (const auto& f : rep.fits)
        std::printf("  N = %2d: C = %.4g, held-out violation ratio %.3f\n", f.N, f.C, f.violation_ratio);
    std::printf("\n%8s %14s\n", "|x|", "|K(x)| (t-axis)");
    for (double r : {0.1, 0.3, 1.0, 3.0}) std::printf("%8.2f %14.6e\n", r, std::abs(K.eval(ray_point(Ray::t_axis, r))));
    return 0;
}
