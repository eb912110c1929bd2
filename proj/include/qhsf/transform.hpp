#pragma once

/**
 * @file transform.hpp
 * @brief Spherical Fourier transform f̂(λ,n) = ∫ f φ_{λ,n} du dt of radial functions, group
 *        convolution, translation identities, the weighted inverse transform and its calibration.
 *
 * Radial path: f̂(λ,n) = π² ∫₀^∞ α Φ_n(|λ|,α) F^λ(α) dα with F^λ(α) = ∫ F(α,t) e^{i⟨λ,t⟩} dt.
 * The α-rule is generalised Gauss–Laguerre matched to e^{-(env.alpha_rate + |λ|)α}; the t-rule is
 * Gauss–Hermite matched to e^{-env.t_rate|t|²} (a box Gauss–Legendre rule is far less accurate for
 * the oscillatory factor). Isotropic t-profiles reduce F^λ to 4π∫ r² F(α,r) sinc(|λ|r) dr.
 */

#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/gauss.hpp"
#include "qhsf/group.hpp"
#include "qhsf/parallel.hpp"
#include "qhsf/quadrature.hpp"
#include "qhsf/radial_function.hpp"
#include "qhsf/spectral_grid.hpp"
#include "qhsf/spherical.hpp"

namespace qhsf {

inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

namespace detail {

inline void check_envelope(const RadialFunction& f, const QuadratureSpec& spec, const char* where) {
    if (!(f.env.alpha_rate > 0.0) || !(f.env.t_rate > 0.0))
        throw InputError(std::string(where) + ": envelope rates must be positive (non-decaying function)");
    if (f.is_zero) return;
    const double R = spec.config.truncation_radius;
    double scale = 0.0, tail = 0.0;
    for (const auto& [a, t] : {std::pair<double, Vec3>{0.0, {0, 0, 0}}, {0.5, {0.5, 0, 0}}, {1.0, {0, 1.0, 0}}})
        scale = std::max(scale, std::abs(f(a, t)));
    for (const auto& [a, t] : {std::pair<double, Vec3>{R * R, {0, 0, 0}}, {0.0, {R, 0, 0}}, {0.0, {0, 0, R}},
                               {R * R, {0, R, 0}}})
        tail = std::max(tail, std::abs(f(a, t)));
    if (!std::isfinite(scale) || !std::isfinite(tail))
        throw NumericError(std::string(where) + ": non-finite function value while probing the envelope");
    if (tail > 1e-3 * scale + 1e-300)
        throw InputError(std::string(where) + ": function '" + f.name + "' does not decay within the truncation radius");
}

/// F^λ(α) = ∫_{R³} F(α,t) e^{i⟨λ,t⟩} dt.
struct CenterTransform {
    const RadialFunction& f;
    Rule1D t3;     // per-axis Hermite rule (generic path)
    Rule1D rhalf;  // positive half of a symmetric Hermite rule (isotropic path)

    CenterTransform(const RadialFunction& fn, int nodes) : f(fn) {
        if (f.t_isotropic()) {
            const Rule1D full = hermite_plain(2 * nodes, f.env.t_rate);
            for (std::size_t i = 0; i < full.size(); ++i)
                if (full.x[i] > 0.0) {
                    rhalf.x.push_back(full.x[i]);
                    rhalf.w.push_back(full.w[i]);
                }
        } else {
            t3 = hermite_plain(nodes, f.env.t_rate);
        }
    }

    [[nodiscard]] cplx operator()(double alpha, const Vec3& lambda) const {
        if (f.t_isotropic()) {
            const double rho = norm(lambda);
            cplx acc = 0.0;
            for (std::size_t i = 0; i < rhalf.size(); ++i) {
                const double r = rhalf.x[i];
                acc += rhalf.w[i] * r * r * sinc(rho * r) * f.F_iso(alpha, r);
            }
            return 4.0 * std::numbers::pi * acc;
        }
        const std::size_t n = t3.size();
        std::vector<cplx> e0(n), e1(n), e2(n);
        for (std::size_t i = 0; i < n; ++i) {
            e0[i] = std::polar(t3.w[i], lambda[0] * t3.x[i]);
            e1[i] = std::polar(t3.w[i], lambda[1] * t3.x[i]);
            e2[i] = std::polar(t3.w[i], lambda[2] * t3.x[i]);
        }
        cplx acc = 0.0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const cplx eab = e0[a] * e1[b];
                for (std::size_t c = 0; c < n; ++c) acc += eab * e2[c] * f(alpha, Vec3{t3.x[a], t3.x[b], t3.x[c]});
            }
        return acc;
    }
};

}  // namespace detail

/// f̂(λ,n) for all n at a single λ.
inline std::vector<cplx> sft_at(const RadialFunction& f, const Vec3& lambda, int n_max, const QuadratureSpec& spec) {
    const double rho = norm(lambda);
    if (!(rho > 0.0)) throw InputError("sft: λ-node at the origin");
    std::vector<cplx> out(static_cast<std::size_t>(n_max) + 1);
    if (f.is_zero) return out;
    const detail::CenterTransform ct(f, spec.config.sft_t_nodes);
    const Rule1D ar = laguerre_plain(spec.config.sft_alpha_nodes, 1.0, f.env.alpha_rate + rho);
    std::vector<double> phi(out.size());
    for (std::size_t i = 0; i < ar.size(); ++i) {
        const cplx g = ct(ar.x[i], lambda);
        if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
            throw NumericError("sft: non-finite integrand at alpha=" + std::to_string(ar.x[i]));
        phi_radial_all(n_max, rho, ar.x[i], phi.data());
        for (std::size_t n = 0; n < out.size(); ++n) out[n] += ar.w[i] * phi[n] * g;
    }
    for (auto& v : out) v *= std::numbers::pi * std::numbers::pi;
    return out;
}

inline SpectralGrid sft(const RadialFunction& f, const SpectralGrid& grid, const QuadratureSpec& spec) {
    detail::check_envelope(f, spec, "sft");
    if (grid.isotropic() && !f.t_isotropic())
        throw InputError("sft: isotropic grids need a function with an isotropic t-profile");
    SpectralGrid out = grid.like();
    const bool per_radius = f.t_isotropic();
    const std::size_t nd = grid.n_dirs(), nr = grid.n_rad();
    const std::size_t jobs = per_radius ? nr : nr * nd;
    std::vector<std::vector<cplx>> res(jobs);
    parallel_for(jobs, [&](std::size_t k) {
        const std::size_t ir = per_radius ? k : k / nd, id = per_radius ? 0 : k % nd;
        res[k] = sft_at(f, grid.lambda(ir, id), grid.n_max, spec);
    });
    for (std::size_t ir = 0; ir < nr; ++ir)
        for (std::size_t id = 0; id < nd; ++id) {
            const auto& v = res[per_radius ? ir : ir * nd + id];
            for (int n = 0; n <= grid.n_max; ++n) out.at(ir, id, n) = v[static_cast<std::size_t>(n)];
        }
    return out;
}

inline SpectralGrid sft(const RadialFunction& f, const GridShape& shape, const QuadratureSpec& spec) {
    return sft(f, make_grid(shape), spec);
}

/**
 * Definition-level transform ∫ f φ by full 7-D quadrature (any f, not necessarily radial). The
 * α-rule rate is raised by |λ| per radius to follow the e^{-|λ|α} decay of φ.
 */
inline SpectralGrid sft_direct(const GroupFunction& f, const SpectralGrid& grid, const QuadratureSpec& spec) {
    SpectralGrid out = grid.like();
    const std::size_t nd = grid.n_dirs(), nc = grid.n_count();
    for (std::size_t ir = 0; ir < grid.n_rad(); ++ir) {
        QuadratureConfig cfg = spec.config;
        cfg.radial_rate += grid.radii[ir];
        const QuadratureSpec sp = build_spec(cfg);
        const auto vals = integrate_hq_multi(
            [&](const GroupPoint& p, cplx* o) {
                const cplx fv = f(p);
                double phi[64];
                std::vector<double> big;
                double* ph = phi;
                if (nc > 64) {
                    big.resize(nc);
                    ph = big.data();
                }
                phi_radial_all(grid.n_max, grid.radii[ir], p.u_norm2(), ph);
                for (std::size_t id = 0; id < nd; ++id) {
                    const cplx e = fv * std::polar(1.0, dot(grid.lambda(ir, id), p.t));
                    for (std::size_t n = 0; n < nc; ++n) o[id * nc + n] = e * ph[n];
                }
            },
            nd * nc, sp);
        for (std::size_t id = 0; id < nd; ++id)
            for (std::size_t n = 0; n < nc; ++n) out.at(ir, id, static_cast<int>(n)) = vals[id * nc + n];
    }
    return out;
}

/// (f∗g)(x) = ∫ f(y) g(y⁻¹x) dy by full quadrature in y.
inline GroupFunction convolve_hq(GroupFunction f, GroupFunction g, const QuadratureSpec& spec) {
    auto sp = std::make_shared<const QuadratureSpec>(spec);
    return [f = std::move(f), g = std::move(g), sp](const GroupPoint& x) {
        return integrate_hq([&](const GroupPoint& y) { return f(y) * g(hq_mul(hq_inv(y), x)); }, *sp);
    };
}

/**
 * (f∗g)^(λ,n) = ∫∫ f(y) g(z) φ(yz) dy dz for radial f, g, reduced to
 * π⁴ ∫∫ α₁α₂ F^λ(α₁) G^λ(α₂) (2/π)∫₀^π sin²θ Φ_n(|λ|, |u₁+u₂|²) sinc(2|λ|√(α₁α₂) sinθ) dθ dα₁ dα₂,
 * where θ is the angle between u₁ and u₂ and the sinc is the S²-average of the cocycle phase.
 * Radii r = √α use Gauss–Legendre on [0, √(40/rate)], which stays spectral despite the √α terms.
 */
inline SpectralGrid convolution_transform(const RadialFunction& f, const RadialFunction& g, const SpectralGrid& grid,
                                          const QuadratureSpec& spec, int radial_nodes = 48, int angle_nodes = 32) {
    detail::check_envelope(f, spec, "convolution_transform");
    detail::check_envelope(g, spec, "convolution_transform");
    SpectralGrid out = grid.like();
    const Rule1D r1 = gauss_legendre(radial_nodes, 0.0, std::sqrt(40.0 / f.env.alpha_rate));
    const Rule1D r2 = gauss_legendre(radial_nodes, 0.0, std::sqrt(40.0 / g.env.alpha_rate));
    const Rule1D th = gauss_legendre(angle_nodes, 0.0, std::numbers::pi);
    const detail::CenterTransform cf(f, spec.config.sft_t_nodes), cg(g, spec.config.sft_t_nodes);
    const std::size_t nd = grid.n_dirs(), nc = grid.n_count();
    parallel_for(grid.n_nodes(), [&](std::size_t k) {
        const std::size_t ir = k / nd, id = k % nd;
        const Vec3 lam = grid.lambda(ir, id);
        const double rho = grid.radii[ir];
        std::vector<cplx> F(r1.size()), G(r2.size()), acc(nc);
        for (std::size_t i = 0; i < r1.size(); ++i) F[i] = cf(r1.x[i] * r1.x[i], lam);
        for (std::size_t i = 0; i < r2.size(); ++i) G[i] = cg(r2.x[i] * r2.x[i], lam);
        std::vector<double> phi(nc), ang(nc);
        for (std::size_t i = 0; i < r1.size(); ++i)
            for (std::size_t j = 0; j < r2.size(); ++j) {
                const double a = r1.x[i], b = r2.x[j];
                std::fill(ang.begin(), ang.end(), 0.0);
                for (std::size_t m = 0; m < th.size(); ++m) {
                    const double s = std::sin(th.x[m]), c = std::cos(th.x[m]);
                    phi_radial_all(grid.n_max, rho, a * a + b * b + 2.0 * a * b * c, phi.data());
                    const double w = th.w[m] * s * s * sinc(2.0 * rho * a * b * s);
                    for (std::size_t n = 0; n < nc; ++n) ang[n] += w * phi[n];
                }
                // α dα = 2 r³ dr for each radius
                const cplx wt = (2.0 * r1.w[i] * a * a * a) * (2.0 * r2.w[j] * b * b * b) * F[i] * G[j];
                for (std::size_t n = 0; n < nc; ++n) acc[n] += wt * ang[n];
            }
        const double pref = std::pow(std::numbers::pi, 4) * 2.0 / std::numbers::pi;
        for (std::size_t n = 0; n < nc; ++n) out.at(ir, id, static_cast<int>(n)) = pref * acc[n];
    });
    return out;
}

/// Pointwise product f̂·ĝ on a common grid.
inline SpectralGrid grid_product(const SpectralGrid& a, const SpectralGrid& b) {
    a.require_compatible(b, "grid_product");
    SpectralGrid out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
    return out;
}

inline double grid_max_abs_diff(const SpectralGrid& a, const SpectralGrid& b) {
    a.require_compatible(b, "grid_max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

enum class Side { left, right };

struct TranslationResidual {
    double residual = 0.0;        // against (L_a f)^ = φ(a) f̂, (R_a f)^ = φ(a⁻¹) f̂
    double swapped_residual = 0.0;  // against the swapped factors φ(a⁻¹) (left) and φ(a) (right)
};

/**
 * Translated transforms via Haar invariance: (L_a f)^ = ∫ f(y) φ(a y) dy, (R_a f)^ = ∫ f(y) φ(y a⁻¹) dy,
 * compared with factor·f̂ where f̂ comes from the same quadrature. Because φ(x) depends on t only
 * through e^{i⟨λ,t⟩}, the t-integral of f factors out exactly as F^λ(|u|²); the remaining u-integral
 * runs over a Laguerre(α) × S³ rule at twice the spec's angular resolution.
 */
inline TranslationResidual translation_identity_residual(const RadialFunction& f, const GroupPoint& a, Side side,
                                                         const SpectralGrid& grid, const QuadratureSpec& spec) {
    detail::check_envelope(f, spec, "translation_identity_residual");
    if (a.q() != 1) throw InputError("translation_identity_residual: only q = 1 is supported");
    const std::size_t nc = grid.n_count(), nd = grid.n_dirs();
    const GroupPoint ainv = hq_inv(a);
    const Rule1D ar = laguerre_plain(spec.config.sft_alpha_nodes, 1.0, f.env.alpha_rate);
    const SphereRule sr = sphere3_rule(2 * spec.config.s3_chi, 2 * spec.config.s3_theta, 2 * spec.config.s3_phi);
    const detail::CenterTransform ct(f, spec.config.sft_t_nodes);
    TranslationResidual r;
    std::vector<TranslationResidual> per(grid.n_nodes());
    parallel_for(grid.n_nodes(), [&](std::size_t k) {
        const std::size_t ir = k / nd, id = k % nd;
        const Vec3 lam = grid.lambda(ir, id);
        const double rho = grid.radii[ir];
        std::vector<cplx> fhat(nc), moved(nc);
        std::vector<double> p0(nc), p1(nc);
        for (std::size_t i = 0; i < ar.size(); ++i) {
            const cplx Fl = ct(ar.x[i], lam);
            phi_radial_all(grid.n_max, rho, ar.x[i], p0.data());
            const double ru = std::sqrt(ar.x[i]);
            for (std::size_t s = 0; s < sr.nodes.size(); ++s) {
                const double w = 0.5 * ar.w[i] * sr.weights[s];
                const GroupPoint y(ru * sr.nodes[s], Vec3{});
                const GroupPoint m = side == Side::left ? hq_mul(a, y) : hq_mul(y, ainv);
                phi_radial_all(grid.n_max, rho, m.u_norm2(), p1.data());
                const cplx e = w * Fl * std::polar(1.0, dot(lam, m.t));
                for (std::size_t n = 0; n < nc; ++n) {
                    fhat[n] += w * Fl * p0[n];
                    moved[n] += e * p1[n];
                }
            }
        }
        for (int n = 0; n <= grid.n_max; ++n) {
            const SphericalParams p(lam, n);
            const cplx phi_a = phi_eval(p, a), phi_ainv = phi_eval(p, ainv);
            const cplx good = side == Side::left ? phi_a : phi_ainv;
            const cplx swapped = side == Side::left ? phi_ainv : phi_a;
            const auto nn = static_cast<std::size_t>(n);
            per[k].residual = std::max(per[k].residual, std::abs(moved[nn] - good * fhat[nn]));
            per[k].swapped_residual = std::max(per[k].swapped_residual, std::abs(moved[nn] - swapped * fhat[nn]));
        }
    });
    for (const auto& v : per) {
        r.residual = std::max(r.residual, v.residual);
        r.swapped_residual = std::max(r.swapped_residual, v.swapped_residual);
    }
    return r;
}

/// Inversion weight w(λ,n) = c·mu(n)·|λ|^a with mu(n) = n+1.
struct PlancherelWeight {
    double c = 1.0 / (2.0 * std::pow(std::numbers::pi, 5));
    double a = 2.0;
    bool calibrated = false;

    [[nodiscard]] static double mu(int n) { return n + 1.0; }
    [[nodiscard]] double operator()(double rho, int n) const { return c * mu(n) * std::pow(rho, a); }

    /// Initial guess for q = 1 (not marked calibrated).
    static PlancherelWeight initial_guess() { return {}; }
};

inline void to_json(nlohmann::json& j, const PlancherelWeight& w) {
    j = nlohmann::json{{"c", w.c}, {"a", w.a}, {"mu", "n+1"}, {"calibrated", w.calibrated}};
}

/**
 * f(g) = Σ_n ∫ f̂(λ,n) conj(φ_{λ,n}(g)) w(λ,n) dλ on the grid's nodes. Pointwise evaluation plus
 * batched evaluation on product sets {α_i} × {t_j}; per-radius contributions are exposed so
 * weight exponents can be refitted without recomputation.
 */
class InverseSft {
public:
    InverseSft(SpectralGrid S, PlancherelWeight w) : S_(std::make_shared<const SpectralGrid>(std::move(S))), w_(w) {
        for (std::size_t ir = 0; ir < S_->n_rad(); ++ir)
            for (int n = 0; n <= S_->n_max; ++n) {
                const double v = w_(S_->radii[ir], n);
                if (!(v > 0.0) || !std::isfinite(v)) throw InputError("inverse_sft: weight not positive on the grid");
            }
        for (const auto& v : S_->values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InputError("inverse_sft: non-finite spectral values");
    }

    [[nodiscard]] const SpectralGrid& grid() const { return *S_; }
    [[nodiscard]] const PlancherelWeight& weight() const { return w_; }

    [[nodiscard]] cplx operator()(const GroupPoint& g) const { return eval(g.u_norm2(), g.t); }

    [[nodiscard]] cplx eval(double alpha, const Vec3& t) const {
        const SpectralGrid& S = *S_;
        const std::size_t nc = S.n_count();
        std::vector<double> phi(nc);
        cplx acc = 0.0;
        for (std::size_t ir = 0; ir < S.n_rad(); ++ir) {
            const double rho = S.radii[ir];
            phi_radial_all(S.n_max, rho, alpha, phi.data());
            for (std::size_t id = 0; id < S.n_dirs(); ++id) {
                cplx a = 0.0;
                for (std::size_t n = 0; n < nc; ++n)
                    a += S.at(ir, id, static_cast<int>(n)) * w_(rho, static_cast<int>(n)) * phi[n];
                if (a == cplx(0.0)) continue;
                const cplx wave = S.isotropic() ? cplx(sinc(rho * norm(t))) : std::polar(1.0, -dot(S.lambda(ir, id), t));
                acc += S.node_weight(ir, id) * a * wave;
            }
        }
        return acc;
    }

    /// Unweighted-in-ρ^a contributions C_r(α_i, t_j) with f = c Σ_r ρ_r^a C_r; layout [r][i][j].
    [[nodiscard]] std::vector<cplx> radial_contributions(const std::vector<double>& alphas,
                                                         const std::vector<Vec3>& ts) const {
        const SpectralGrid& S = *S_;
        const std::size_t na = alphas.size(), nt = ts.size(), nc = S.n_count();
        std::vector<cplx> out(S.n_rad() * na * nt);
        parallel_for(S.n_rad(), [&](std::size_t ir) {
            const double rho = S.radii[ir];
            std::vector<double> phi(nc);
            std::vector<double> phis(na * nc);
            for (std::size_t i = 0; i < na; ++i) phi_radial_all(S.n_max, rho, alphas[i], phis.data() + i * nc);
            std::vector<cplx> A(na), wave(nt);
            cplx* dst = out.data() + ir * na * nt;
            for (std::size_t id = 0; id < S.n_dirs(); ++id) {
                for (std::size_t i = 0; i < na; ++i) {
                    cplx a = 0.0;
                    for (std::size_t n = 0; n < nc; ++n)
                        a += S.at(ir, id, static_cast<int>(n)) * PlancherelWeight::mu(static_cast<int>(n)) *
                             phis[i * nc + n];
                    A[i] = S.node_weight(ir, id) * a;
                }
                const Vec3 lam = S.lambda(ir, id);
                for (std::size_t j = 0; j < nt; ++j)
                    wave[j] = S.isotropic() ? cplx(sinc(rho * norm(ts[j]))) : std::polar(1.0, -dot(lam, ts[j]));
                for (std::size_t i = 0; i < na; ++i) {
                    if (A[i] == cplx(0.0)) continue;
                    for (std::size_t j = 0; j < nt; ++j) dst[i * nt + j] += A[i] * wave[j];
                }
            }
        });
        return out;
    }

    /// Values on {α_i} × {t_j}, layout [i][j].
    [[nodiscard]] std::vector<cplx> eval_product(const std::vector<double>& alphas, const std::vector<Vec3>& ts) const {
        const auto C = radial_contributions(alphas, ts);
        const std::size_t m = alphas.size() * ts.size();
        std::vector<cplx> out(m);
        for (std::size_t ir = 0; ir < S_->n_rad(); ++ir) {
            const double s = w_.c * std::pow(S_->radii[ir], w_.a);
            for (std::size_t k = 0; k < m; ++k) out[k] += s * C[ir * m + k];
        }
        return out;
    }

private:
    std::shared_ptr<const SpectralGrid> S_;
    PlancherelWeight w_;
};

inline InverseSft inverse_sft(const SpectralGrid& S, const PlancherelWeight& w,
                              [[maybe_unused]] const QuadratureSpec& spec) {
    return InverseSft(S, w);
}

/// Weighted evaluation set for relative L² errors of radial functions: α × t product rule.
struct L2EvalSet {
    std::vector<double> alphas;
    std::vector<Vec3> ts;
    std::vector<double> weights;  // [i][j], includes π² α dα dt

    static L2EvalSet for_envelope(const Envelope& env, int alpha_nodes = 20, int t_nodes = 14) {
        L2EvalSet s;
        const Rule1D ar = laguerre_plain(alpha_nodes, 1.0, 2.0 * env.alpha_rate);
        const Rule1D tr = hermite_plain(t_nodes, 2.0 * env.t_rate);
        s.alphas = ar.x;
        std::vector<double> tw;
        for (std::size_t a = 0; a < tr.size(); ++a)
            for (std::size_t b = 0; b < tr.size(); ++b)
                for (std::size_t c = 0; c < tr.size(); ++c) {
                    s.ts.push_back({tr.x[a], tr.x[b], tr.x[c]});
                    tw.push_back(tr.w[a] * tr.w[b] * tr.w[c]);
                }
        for (std::size_t i = 0; i < ar.size(); ++i)
            for (double w : tw) s.weights.push_back(std::numbers::pi * std::numbers::pi * ar.w[i] * w);
        return s;
    }

    [[nodiscard]] std::vector<cplx> sample(const RadialFunction& f) const {
        std::vector<cplx> v;
        v.reserve(weights.size());
        for (double a : alphas)
            for (const auto& t : ts) v.push_back(f(a, t));
        return v;
    }

    [[nodiscard]] double relative_error(const std::vector<cplx>& approx, const std::vector<cplx>& exact) const {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < weights.size(); ++k) {
            num += weights[k] * std::norm(approx[k] - exact[k]);
            den += weights[k] * std::norm(exact[k]);
        }
        return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    }
};

/// Relative L² error of inverse_sft(sft(f)) against f.
inline double roundtrip_error(const RadialFunction& f, const InverseSft& inv) {
    const L2EvalSet es = L2EvalSet::for_envelope(f.env);
    return es.relative_error(inv.eval_product(es.alphas, es.ts), es.sample(f));
}

struct PlancherelFit {
    PlancherelWeight weight;
    PlancherelWeight initial;
    double initial_error = 0.0;
    double fitted_error = 0.0;
    int evaluations = 0;
    std::string reference;
};

inline void to_json(nlohmann::json& j, const PlancherelFit& f) {
    j = nlohmann::json{{"weight", f.weight},
                       {"initial", f.initial},
                       {"initial_error", f.initial_error},
                       {"fitted_error", f.fitted_error},
                       {"evaluations", f.evaluations},
                       {"reference", f.reference}};
}

/**
 * Fits (c, a) in w = c(n+1)|λ|^a minimising the round-trip L² error on the reference: for fixed a the
 * optimal c is a linear least-squares solve; a is found by Brent's method on [a₀-3, a₀+3].
 */
inline PlancherelFit calibrate_plancherel(const RadialFunction& reference, const SpectralGrid& grid,
                                          const QuadratureSpec& spec) {
    const SpectralGrid S = sft(reference, grid, spec);
    const L2EvalSet es = L2EvalSet::for_envelope(reference.env);
    const std::vector<cplx> exact = es.sample(reference);
    const InverseSft inv(S, PlancherelWeight::initial_guess());
    const auto C = inv.radial_contributions(es.alphas, es.ts);
    const std::size_t m = exact.size(), nr = S.n_rad();

    PlancherelFit fit;
    fit.reference = reference.name;
    fit.initial = PlancherelWeight::initial_guess();
    auto reconstruct = [&](double a) {
        std::vector<cplx> R(m);
        for (std::size_t ir = 0; ir < nr; ++ir) {
            const double s = std::pow(S.radii[ir], a);
            for (std::size_t k = 0; k < m; ++k) R[k] += s * C[ir * m + k];
        }
        return R;
    };
    auto best_c = [&](const std::vector<cplx>& R) {
        double num = 0.0, den = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            num += es.weights[k] * (std::conj(R[k]) * exact[k]).real();
            den += es.weights[k] * std::norm(R[k]);
        }
        return den > 0.0 ? num / den : 0.0;
    };
    auto error_at = [&](double c, const std::vector<cplx>& R) {
        std::vector<cplx> scaled(m);
        for (std::size_t k = 0; k < m; ++k) scaled[k] = c * R[k];
        return es.relative_error(scaled, exact);
    };
    fit.initial_error = error_at(fit.initial.c, reconstruct(fit.initial.a));
    auto objective = [&](double a) {
        ++fit.evaluations;
        const auto R = reconstruct(a);
        return error_at(best_c(R), R);
    };
    std::uintmax_t iters = 200;
    const auto [a_opt, e_opt] =
        boost::math::tools::brent_find_minima(objective, fit.initial.a - 3.0, fit.initial.a + 3.0, 40, iters);
    const double c_opt = best_c(reconstruct(a_opt));
    if (!std::isfinite(a_opt) || !std::isfinite(c_opt) || !std::isfinite(e_opt) || !(c_opt > 0.0))
        throw NumericError("calibrate_plancherel: optimizer diverged (a=" + std::to_string(a_opt) +
                           ", c=" + std::to_string(c_opt) + ", error=" + std::to_string(e_opt) + ")");
    if (e_opt <= fit.initial_error) {
        fit.weight = {c_opt, a_opt, true};
        fit.fitted_error = e_opt;
    } else {
        fit.weight = fit.initial;
        fit.weight.calibrated = true;
        fit.fitted_error = fit.initial_error;
    }
    return fit;
}

}  // namespace qhsf
