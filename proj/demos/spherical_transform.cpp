// Spherical transform of a Gaussian against its closed form, then a calibrated inversion.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "qhsf.hpp"

using namespace qhsf;

int main() {
    const QuadratureSpec spec = build_spec(Tier::standard);
    const RadialFunction f = RadialFunction::gaussian(1.0, 1.0);

    // f(u,t) = e^{-|u|²-|t|²}:  f̂(λ,n) = π^{7/2} e^{-ρ²/4} ((1-ρ)/(1+ρ))^n / (1+ρ)²
    std::printf("%6s %3s %22s %22s %10s\n", "rho", "n", "quadrature", "closed form", "abs err");
    for (double rho : {0.25, 1.0, 3.0})
        for (int n : {0, 1, 4}) {
            const cplx v = sft_at(f, {0.0, 0.0, rho}, n, spec)[static_cast<std::size_t>(n)];
            const double ref = std::pow(std::numbers::pi, 3.5) * std::exp(-rho * rho / 4.0) *
                               std::pow((1.0 - rho) / (1.0 + rho), n) / ((1.0 + rho) * (1.0 + rho));
            std::printf("%6.2f %3d %22.15e %22.15e %10.2e\n", rho, n, v.real(), ref, std::abs(v - ref));
        }

    const SpectralGrid G = make_grid(GridShape::inversion_shape());
    const PlancherelFit fit = calibrate_plancherel(f, G, spec);
    std::printf("\nPlancherel weight c(n+1)|lambda|^a: c = %.6g (1/(2 pi^5) = %.6g), a = %.4f\n", fit.weight.c,
                1.0 / (2.0 * std::pow(std::numbers::pi, 5)), fit.weight.a);

    const RadialFunction g = RadialFunction::gaussian(1.5, 0.7);
    const InverseSft inv(sft(g, G, spec), fit.weight);
    std::printf("held-out round trip: relative L2 error %.3e\n", roundtrip_error(g, inv));
    for (double s : {0.0, 0.5, 1.0})
        std::printf("  g(s,0,0,0; 0) = %.6f   reconstructed %.6f\n", std::exp(-1.5 * s * s),
                    inv(GroupPoint(Quaternion{s, 0, 0, 0}, {})).real());
    return 0;
}
