#pragma once

/**
 * @file sublaplacian.hpp
 * @brief Finite-difference sub-Laplacian 𝓛 = −Σ_j X_j², X_j f(g) = d/dε f(g·(εe_j, 0)), applied to
 *        φ_{λ,n}; the eigenvalue fit e(λ,n) gives the spectral variable ν of multipliers m(𝓛).
 *        (εe_j, 0) is a one-parameter subgroup, so X_j² f(g) is the second central difference of
 *        ε ↦ f(g·(εe_j, 0)).
 */

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/group.hpp"
#include "qhsf/rng.hpp"
#include "qhsf/spherical.hpp"

namespace qhsf {

struct SublapFit {
    double e = 0.0;
    double residual = 0.0;  // ‖𝓛φ − eφ‖ / ‖φ‖ over the base points
};

inline void to_json(nlohmann::json& j, const SublapFit& f) {
    j = nlohmann::json{{"e", f.e}, {"residual", f.residual}};
}

/// 𝓛φ_{λ,n}(g) for n = 0..n_max by central differences with step h (q = 1).
inline std::vector<cplx> sublap_apply_all(const Vec3& lambda, int n_max, const GroupPoint& g, double h) {
    const std::size_t nc = static_cast<std::size_t>(n_max) + 1;
    const double rho = norm(lambda);
    std::vector<double> p0(nc), pp(nc), pm(nc);
    phi_radial_all(n_max, rho, g.u_norm2(), p0.data());
    const cplx c0 = std::polar(1.0, dot(lambda, g.t));
    std::vector<cplx> out(nc);
    static constexpr Quaternion basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (const auto& e : basis) {
        const GroupPoint gp = hq_mul(g, GroupPoint(h * e, Vec3{}));
        const GroupPoint gm = hq_mul(g, GroupPoint(-h * e, Vec3{}));
        phi_radial_all(n_max, rho, gp.u_norm2(), pp.data());
        phi_radial_all(n_max, rho, gm.u_norm2(), pm.data());
        const cplx cp = std::polar(1.0, dot(lambda, gp.t)), cm = std::polar(1.0, dot(lambda, gm.t));
        for (std::size_t n = 0; n < nc; ++n) out[n] -= (cp * pp[n] - 2.0 * c0 * p0[n] + cm * pm[n]) / (h * h);
    }
    return out;
}

/// 16 seeded base points at the natural scale of φ_λ: |u| ~ |λ|^{-1/2}, |t| ~ |λ|^{-1}.
inline std::vector<GroupPoint> sublap_base_points(const Vec3& lambda, std::uint64_t seed = 16) {
    const double rho = norm(lambda);
    Rng rng(seed);
    std::vector<GroupPoint> pts;
    for (int i = 0; i < 16; ++i) {
        const Quaternion u = (1.0 / std::sqrt(rho)) * rng.quaternion(-0.7, 0.7);
        const Vec3 t = (1.0 / rho) * rng.vec3();
        pts.emplace_back(u, t);
    }
    return pts;
}

/// Least-squares eigenvalue fits for n = 0..n_max: e = Re Σ conj(φ)𝓛φ / Σ|φ|².
inline std::vector<SublapFit> sublap_eigenvalues(const Vec3& lambda, int n_max, double h) {
    if (!(h > 0.0)) throw InputError("sublap_eigenvalue: step h must be positive");
    if (!(norm(lambda) > 0.0)) throw InputError("sublap_eigenvalue: lambda must be nonzero");
    if (n_max < 0) throw InputError("sublap_eigenvalue: n must be >= 0");
    const std::size_t nc = static_cast<std::size_t>(n_max) + 1;
    const double rho = norm(lambda);
    std::vector<cplx> num(nc);
    std::vector<double> den(nc);
    std::vector<std::vector<cplx>> L, P;
    std::vector<double> p(nc);
    for (const auto& g : sublap_base_points(lambda)) {
        L.push_back(sublap_apply_all(lambda, n_max, g, h));
        phi_radial_all(n_max, rho, g.u_norm2(), p.data());
        std::vector<cplx> ph(nc);
        for (std::size_t n = 0; n < nc; ++n) ph[n] = std::polar(p[n], dot(lambda, g.t));
        P.push_back(ph);
    }
    std::vector<SublapFit> out(nc);
    for (std::size_t n = 0; n < nc; ++n) {
        cplx s = 0.0;
        double d = 0.0;
        for (std::size_t i = 0; i < P.size(); ++i) {
            s += std::conj(P[i][n]) * L[i][n];
            d += std::norm(P[i][n]);
        }
        if (!(d > 1e-200))
            throw NumericError("sublap_eigenvalue: degenerate fit (phi vanishes at all base points, n=" +
                               std::to_string(n) + ")");
        const double e = s.real() / d;
        double r = 0.0;
        for (std::size_t i = 0; i < P.size(); ++i) r += std::norm(L[i][n] - e * P[i][n]);
        out[n] = {e, std::sqrt(r / d)};
    }
    return out;
}

inline SublapFit sublap_eigenvalue(const Vec3& lambda, int n, double h = 1e-3) {
    if (n < 0) throw InputError("sublap_eigenvalue: n must be >= 0");
    return sublap_eigenvalues(lambda, n, h).back();
}

/**
 * ν = e(λ,n) = κ_n |λ| with κ_n taken from the finite-difference oracle at |λ| = 1
 * (e is linear in |λ| by dilation homogeneity).
 */
struct SpectralMap {
    std::vector<double> kappa;
    double max_relative_residual = 0.0;

    [[nodiscard]] int n_max() const { return static_cast<int>(kappa.size()) - 1; }

    [[nodiscard]] double operator()(double rho, int n) const {
        if (n < 0 || n > n_max())
            throw InputError("spectral map: n=" + std::to_string(n) + " outside 0.." + std::to_string(n_max()));
        return kappa[static_cast<std::size_t>(n)] * rho;
    }

    static SpectralMap from_oracle(int n_max, double h = 1e-3) {
        SpectralMap m;
        for (const auto& f : sublap_eigenvalues(Vec3{0.0, 0.0, 1.0}, n_max, h)) {
            m.kappa.push_back(f.e);
            m.max_relative_residual = std::max(m.max_relative_residual, f.residual / std::abs(f.e));
        }
        return m;
    }
};

inline void to_json(nlohmann::json& j, const SpectralMap& m) {
    j = nlohmann::json{{"kappa", m.kappa}, {"max_relative_residual", m.max_relative_residual}};
}

}  // namespace qhsf
