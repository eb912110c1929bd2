#pragma once

/**
 * @file multiplier.hpp
 * @brief Spherical Fourier multipliers: (T_m f)^(λ,n) = m(e(λ,n))·f̂(λ,n) with e the sub-Laplacian
 *        eigenvalue, reconstructed through the calibrated inverse transform.
 *
 * The spectral path is authoritative. The direct-integral reading ∫_{K×H} m f(u,t) φ(k·u,t) φ(u,t)
 * reduces (φ is K-invariant, ∫_K dk = 1) to m·∫ f φ², which differs from m·f̂; it is computed only
 * as a diagnostic and its discrepancy is reported.
 */

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/sublaplacian.hpp"
#include "qhsf/symbols.hpp"
#include "qhsf/transform.hpp"

namespace qhsf {

/// (λ,n) ↦ m(e(λ,n))·S(λ,n).
inline SpectralGrid apply_symbol(const Symbol& m, const SpectralGrid& S, const SpectralMap& map) {
    if (map.n_max() < S.n_max) throw InputError("apply_multiplier: spectral map covers fewer n than the grid");
    SpectralGrid out = S;
    for (std::size_t ir = 0; ir < S.n_rad(); ++ir)
        for (int n = 0; n <= S.n_max; ++n) {
            const double nu = map(S.radii[ir], n);
            const cplx v = m(nu);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InputError("apply_multiplier: symbol '" + m.descriptor + "' not finite at nu=" + std::to_string(nu));
            for (std::size_t id = 0; id < S.n_dirs(); ++id) out.at(ir, id, n) *= v;
        }
    return out;
}

/// sup |m(e(λ,n))| over the grid's spectral values (operator norm of T_m on the grid).
inline double symbol_sup(const Symbol& m, const SpectralGrid& S, const SpectralMap& map) {
    double s = 0.0;
    for (std::size_t ir = 0; ir < S.n_rad(); ++ir)
        for (int n = 0; n <= S.n_max; ++n) s = std::max(s, std::abs(m(map(S.radii[ir], n))));
    return s;
}

struct MultiplierResult {
    SpectralGrid input;     // f̂
    SpectralGrid spectrum;  // m·f̂
    std::shared_ptr<const InverseSft> output;  // T_m f
    double symbol_sup = 0.0;

    cplx operator()(const GroupPoint& g) const { return (*output)(g); }
};

inline MultiplierResult apply_multiplier(const Symbol& m, const RadialFunction& f, const SpectralGrid& grid,
                                         const PlancherelWeight& w, const SpectralMap& map, const QuadratureSpec& spec) {
    if (!w.calibrated) throw StateError("apply_multiplier: Plancherel weight is not calibrated (run calibrate first)");
    MultiplierResult r;
    r.input = sft(f, grid, spec);
    r.spectrum = apply_symbol(m, r.input, map);
    r.output = std::make_shared<const InverseSft>(r.spectrum, w);
    r.symbol_sup = symbol_sup(m, grid, map);
    return r;
}

/// Relative L² distance of T_m f from a reference function (m ≡ 1: the round-trip error).
inline double multiplier_error(const MultiplierResult& r, const RadialFunction& reference) {
    const L2EvalSet es = L2EvalSet::for_envelope(reference.env);
    return es.relative_error(r.output->eval_product(es.alphas, es.ts), es.sample(reference));
}

struct DirectDiscrepancy {
    double max_abs = 0.0;
    double relative = 0.0;  // max_abs / max |m·f̂|
};

inline void to_json(nlohmann::json& j, const DirectDiscrepancy& d) {
    j = nlohmann::json{{"max_abs", d.max_abs}, {"relative", d.relative}};
}

/// Direct reading m(e)·∫ f φ² (= m(e)·π² ∫ α Φ_n(|λ|,α)² F^{2λ}(α) dα) against the spectral m(e)·f̂.
inline DirectDiscrepancy multiplier_direct_discrepancy(const Symbol& m, const RadialFunction& f,
                                                       const SpectralGrid& grid, const SpectralMap& map,
                                                       const QuadratureSpec& spec) {
    detail::check_envelope(f, spec, "multiplier_direct_discrepancy");
    const SpectralGrid spectral = apply_symbol(m, sft(f, grid, spec), map);
    const detail::CenterTransform ct(f, spec.config.sft_t_nodes);
    const std::size_t nd = grid.n_dirs(), nc = grid.n_count();
    std::vector<double> dev(grid.n_nodes()), ref(grid.n_nodes());
    parallel_for(grid.n_nodes(), [&](std::size_t k) {
        const std::size_t ir = k / nd, id = k % nd;
        const Vec3 lam = grid.lambda(ir, id);
        const double rho = grid.radii[ir];
        const Rule1D ar = laguerre_plain(spec.config.sft_alpha_nodes, 1.0, f.env.alpha_rate + 2.0 * rho);
        std::vector<cplx> acc(nc);
        std::vector<double> phi(nc);
        for (std::size_t i = 0; i < ar.size(); ++i) {
            const cplx g = ct(ar.x[i], 2.0 * lam);
            phi_radial_all(grid.n_max, rho, ar.x[i], phi.data());
            for (std::size_t n = 0; n < nc; ++n) acc[n] += ar.w[i] * phi[n] * phi[n] * g;
        }
        for (int n = 0; n <= grid.n_max; ++n) {
            const cplx direct = m(map(rho, n)) * std::numbers::pi * std::numbers::pi * acc[static_cast<std::size_t>(n)];
            const cplx s = spectral.at(ir, id, n);
            dev[k] = std::max(dev[k], std::abs(direct - s));
            ref[k] = std::max(ref[k], std::abs(s));
        }
    });
    DirectDiscrepancy d;
    double r = 0.0;
    for (std::size_t k = 0; k < dev.size(); ++k) {
        d.max_abs = std::max(d.max_abs, dev[k]);
        r = std::max(r, ref[k]);
    }
    d.relative = r > 0.0 ? d.max_abs / r : d.max_abs;
    return d;
}

/**
 * Residuals on the spectral grid of (i) T_m(f∗g) = T_m f ∗ g and (ii) T_{m1}f ∗ T_{m2}g = T_{m1m2}(f∗g),
 * with (f∗g)^ from the group-law convolution integral and products of transforms on the other side.
 */
inline std::pair<double, double> multiplier_algebra_residual(const Symbol& m1, const Symbol& m2,
                                                             const RadialFunction& f, const RadialFunction& g,
                                                             const SpectralGrid& grid, const SpectralMap& map,
                                                             const QuadratureSpec& spec) {
    const SpectralGrid fg = convolution_transform(f, g, grid, spec);
    const SpectralGrid fh = sft(f, grid, spec), gh = sft(g, grid, spec);
    const double r1 = grid_max_abs_diff(apply_symbol(m1, fg, map), grid_product(apply_symbol(m1, fh, map), gh));
    const double r2 = grid_max_abs_diff(grid_product(apply_symbol(m1, fh, map), apply_symbol(m2, gh, map)),
                                        apply_symbol(product_symbol(m1, m2), fg, map));
    return {r1, r2};
}

}  // namespace qhsf
