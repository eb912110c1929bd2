#pragma once

/**
 * @file quadrature.hpp
 * @brief Deterministic quadrature over H_q = R⁴ × R³ (q = 1), over the centre R³ and over
 *        K ≅ S³ with normalised Haar measure.
 *
 * u-integrals: u = √α·ω with du = ½ α dα dω; α uses generalised Gauss–Laguerre (weight
 * α e^{-rate·α}), ω a product rule in hyperspherical angles (Chebyshev-II in cos χ,
 * Gauss–Legendre in cos θ, uniform in φ). t-integrals: Gauss–Legendre product on [-T, T]³.
 * Reductions are serial in a fixed order, so results are independent of thread count.
 */

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/gauss.hpp"
#include "qhsf/group.hpp"
#include "qhsf/parallel.hpp"

namespace qhsf {

enum class Tier { fast, standard, strict };

inline double tier_tolerance(Tier t) {
    switch (t) {
        case Tier::fast: return 1e-4;
        case Tier::standard: return 1e-6;
        case Tier::strict: return 1e-8;
    }
    return 1e-6;
}

inline std::string to_string(Tier t) {
    switch (t) {
        case Tier::fast: return "fast";
        case Tier::standard: return "standard";
        case Tier::strict: return "strict";
    }
    return "standard";
}

inline Tier parse_tier(const std::string& s) {
    if (s == "fast") return Tier::fast;
    if (s == "standard") return Tier::standard;
    if (s == "strict") return Tier::strict;
    throw InputError("unknown tier '" + s + "' (expected fast|standard|strict)");
}

/// Resolution parameters; every count must be >= 4.
struct QuadratureConfig {
    Tier tier = Tier::standard;
    int radial_nodes = 16;       // α rule (generic path)
    double radial_rate = 1.0;    // α weight e^{-rate α}
    int s3_chi = 4;              // S³ rule resolution
    int s3_theta = 4;
    int s3_phi = 8;
    int t_nodes = 24;            // per axis, generic path
    double t_halfwidth = 4.5;    // T of the t-box [-T, T]³
    double truncation_radius = 6.0;
    int sft_alpha_nodes = 40;    // spherical transform: α rule matched to each |λ|
    int sft_t_nodes = 24;        // spherical transform: Hermite rule per t-axis
    int fock_u_nodes = 6;        // group Fourier matrix: Hermite rule per u-axis
    int fock_t_nodes = 10;       // group Fourier matrix: Hermite rule per t-axis

    static QuadratureConfig for_tier(Tier t) {
        QuadratureConfig c;
        c.tier = t;
        switch (t) {
            case Tier::fast:
                c.radial_nodes = 10;
                c.t_nodes = 16;
                c.t_halfwidth = 4.0;
                c.sft_alpha_nodes = 28;
                c.sft_t_nodes = 16;
                c.fock_t_nodes = 8;
                break;
            case Tier::standard: break;
            case Tier::strict:
                c.radial_nodes = 24;
                c.s3_chi = 6;
                c.s3_theta = 6;
                c.s3_phi = 12;
                c.t_nodes = 28;
                c.t_halfwidth = 5.5;
                c.sft_alpha_nodes = 56;
                c.sft_t_nodes = 32;
                c.fock_u_nodes = 8;
                c.fock_t_nodes = 14;
                break;
        }
        return c;
    }
};

inline void to_json(nlohmann::json& j, const QuadratureConfig& c) {
    j = nlohmann::json{{"tier", to_string(c.tier)},
                       {"radial_nodes", c.radial_nodes},
                       {"radial_rate", c.radial_rate},
                       {"s3_nodes", {c.s3_chi, c.s3_theta, c.s3_phi}},
                       {"t_nodes", c.t_nodes},
                       {"t_halfwidth", c.t_halfwidth},
                       {"truncation_radius", c.truncation_radius},
                       {"sft_alpha_nodes", c.sft_alpha_nodes},
                       {"sft_t_nodes", c.sft_t_nodes},
                       {"fock_u_nodes", c.fock_u_nodes},
                       {"fock_t_nodes", c.fock_t_nodes}};
}

/// Missing keys fall back to the tier defaults.
inline void from_json(const nlohmann::json& j, QuadratureConfig& c) {
    c = QuadratureConfig::for_tier(parse_tier(j.value("tier", std::string("standard"))));
    c.radial_nodes = j.value("radial_nodes", c.radial_nodes);
    c.radial_rate = j.value("radial_rate", c.radial_rate);
    if (j.contains("s3_nodes")) {
        const auto& s = j.at("s3_nodes");
        if (!s.is_array() || s.size() != 3) throw InputError("s3_nodes must be an array of 3 integers");
        c.s3_chi = s[0].get<int>();
        c.s3_theta = s[1].get<int>();
        c.s3_phi = s[2].get<int>();
    }
    c.t_nodes = j.value("t_nodes", c.t_nodes);
    c.t_halfwidth = j.value("t_halfwidth", c.t_halfwidth);
    c.truncation_radius = j.value("truncation_radius", c.truncation_radius);
    c.sft_alpha_nodes = j.value("sft_alpha_nodes", c.sft_alpha_nodes);
    c.sft_t_nodes = j.value("sft_t_nodes", c.sft_t_nodes);
    c.fock_u_nodes = j.value("fock_u_nodes", c.fock_u_nodes);
    c.fock_t_nodes = j.value("fock_t_nodes", c.fock_t_nodes);
}

/// Product rule on S³ ⊂ R⁴; weights sum to 2π².
struct SphereRule {
    std::vector<Quaternion> nodes;
    std::vector<double> weights;
};

inline SphereRule sphere3_rule(int n_chi, int n_theta, int n_phi) {
    const Rule1D cx = gauss_chebyshev2(n_chi);
    const Rule1D ct = gauss_legendre(n_theta);
    SphereRule r;
    for (std::size_t a = 0; a < cx.size(); ++a) {
        const double c1 = cx.x[a], s1 = std::sqrt(std::max(0.0, 1.0 - c1 * c1));
        for (std::size_t b = 0; b < ct.size(); ++b) {
            const double c2 = ct.x[b], s2 = std::sqrt(std::max(0.0, 1.0 - c2 * c2));
            for (int k = 0; k < n_phi; ++k) {
                const double ph = 2.0 * std::numbers::pi * (k + 0.5) / n_phi;
                r.nodes.push_back({c1, s1 * c2, s1 * s2 * std::cos(ph), s1 * s2 * std::sin(ph)});
                r.weights.push_back(cx.w[a] * ct.w[b] * 2.0 * std::numbers::pi / n_phi);
            }
        }
    }
    return r;
}

struct QuadratureSpec {
    QuadratureConfig config;
    Rule1D radial;       // ∫₀^∞ g(α) α dα
    SphereRule sphere3;  // ∫_{S³} g dω, total 2π²
    Rule1D t_axis;       // ∫_{-T}^{T} g(s) ds

    [[nodiscard]] double tolerance() const { return tier_tolerance(config.tier); }
};

inline QuadratureSpec build_spec(const QuadratureConfig& c) {
    auto need = [](int v, const char* what) {
        if (v < 4) throw InputError(std::string("build_spec: ") + what + " must be >= 4 (got " + std::to_string(v) + ")");
    };
    need(c.radial_nodes, "radial_nodes");
    need(c.s3_chi, "s3 chi nodes");
    need(c.s3_theta, "s3 theta nodes");
    need(c.s3_phi, "s3 phi nodes");
    need(c.t_nodes, "t_nodes");
    need(c.sft_alpha_nodes, "sft_alpha_nodes");
    need(c.sft_t_nodes, "sft_t_nodes");
    need(c.fock_u_nodes, "fock_u_nodes");
    need(c.fock_t_nodes, "fock_t_nodes");
    if (!(c.truncation_radius > 0.0)) throw InputError("build_spec: truncation_radius must be positive");
    if (!(c.t_halfwidth > 0.0)) throw InputError("build_spec: t_halfwidth must be positive");
    if (!(c.radial_rate > 0.0)) throw InputError("build_spec: radial_rate must be positive");
    QuadratureSpec s;
    s.config = c;
    s.radial = laguerre_plain(c.radial_nodes, 1.0, c.radial_rate);
    s.sphere3 = sphere3_rule(c.s3_chi, c.s3_theta, c.s3_phi);
    s.t_axis = gauss_legendre(c.t_nodes, -c.t_halfwidth, c.t_halfwidth);
    return s;
}

inline QuadratureSpec build_spec(Tier t) { return build_spec(QuadratureConfig::for_tier(t)); }

namespace detail {

inline std::string describe(const GroupPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << "u=(" << p.u[0].w << "," << p.u[0].x << "," << p.u[0].y << "," << p.u[0].z << ") t=(" << p.t[0] << ","
       << p.t[1] << "," << p.t[2] << ")";
    return os.str();
}

inline void check_finite(const cplx& v, const GroupPoint& p, const char* where) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw NumericError(std::string(where) + ": non-finite integrand at node " + describe(p));
    }
}

}  // namespace detail

/**
 * Multi-valued integral over H_1: f(p, out) writes m values; returns the m integrals.
 * Parallel over u-nodes, serial fixed-order reduction.
 */
template <class F>
std::vector<cplx> integrate_hq_multi(F&& f, std::size_t m, const QuadratureSpec& spec) {
    const std::size_t nr = spec.radial.size(), ns = spec.sphere3.nodes.size(), nt = spec.t_axis.size();
    const std::size_t nu = nr * ns;
    std::vector<cplx> partial(nu * m);
    parallel_for(nu, [&](std::size_t iu) {
        const std::size_t ir = iu / ns, is = iu % ns;
        const double r = std::sqrt(spec.radial.x[ir]);
        const double wu = 0.5 * spec.radial.w[ir] * spec.sphere3.weights[is];
        GroupPoint p(r * spec.sphere3.nodes[is], Vec3{});
        std::vector<cplx> acc(m), val(m);
        for (std::size_t a = 0; a < nt; ++a) {
            for (std::size_t b = 0; b < nt; ++b) {
                for (std::size_t c = 0; c < nt; ++c) {
                    p.t = {spec.t_axis.x[a], spec.t_axis.x[b], spec.t_axis.x[c]};
                    const double wt = spec.t_axis.w[a] * spec.t_axis.w[b] * spec.t_axis.w[c];
                    f(p, val.data());
                    for (std::size_t k = 0; k < m; ++k) {
                        detail::check_finite(val[k], p, "integrate_hq");
                        acc[k] += wt * val[k];
                    }
                }
            }
        }
        for (std::size_t k = 0; k < m; ++k) partial[iu * m + k] = wu * acc[k];
    });
    std::vector<cplx> out(m);
    for (std::size_t iu = 0; iu < nu; ++iu)
        for (std::size_t k = 0; k < m; ++k) out[k] += partial[iu * m + k];
    return out;
}

/// ∫_{H_1} f(u,t) du dt by full (α, S³, t-box) product quadrature; f: GroupPoint -> complex.
template <class F>
cplx integrate_hq(F&& f, const QuadratureSpec& spec) {
    return integrate_hq_multi([&](const GroupPoint& p, cplx* out) { out[0] = cplx(f(p)); }, 1, spec)[0];
}

/// Radial reduction π² ∫₀^∞∫_{R³} F(α, t) α dα dt for K-invariant integrands F(α, t).
template <class F>
cplx integrate_hq_radial(F&& fn, const QuadratureSpec& spec) {
    const std::size_t nr = spec.radial.size(), nt = spec.t_axis.size();
    std::vector<cplx> partial(nr);
    parallel_for(nr, [&](std::size_t ir) {
        const double al = spec.radial.x[ir];
        cplx acc = 0.0;
        for (std::size_t a = 0; a < nt; ++a)
            for (std::size_t b = 0; b < nt; ++b)
                for (std::size_t c = 0; c < nt; ++c) {
                    const Vec3 t{spec.t_axis.x[a], spec.t_axis.x[b], spec.t_axis.x[c]};
                    const cplx v = cplx(fn(al, t));
                    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                        throw NumericError("integrate_hq_radial: non-finite integrand at alpha=" + std::to_string(al));
                    acc += spec.t_axis.w[a] * spec.t_axis.w[b] * spec.t_axis.w[c] * v;
                }
        partial[ir] = spec.radial.w[ir] * acc;
    });
    cplx out = 0.0;
    for (const auto& v : partial) out += v;
    return std::numbers::pi * std::numbers::pi * out;
}

/// ∫_{[-T,T]³} g(t) dt on the spec's t-box.
template <class G>
cplx integrate_center(G&& g, const QuadratureSpec& spec) {
    const std::size_t nt = spec.t_axis.size();
    cplx acc = 0.0;
    for (std::size_t a = 0; a < nt; ++a)
        for (std::size_t b = 0; b < nt; ++b)
            for (std::size_t c = 0; c < nt; ++c)
                acc += spec.t_axis.w[a] * spec.t_axis.w[b] * spec.t_axis.w[c] *
                       cplx(g(Vec3{spec.t_axis.x[a], spec.t_axis.x[b], spec.t_axis.x[c]}));
    return acc;
}

/// ∫_K g(k) dk with normalised Haar measure (∫_K 1 dk = 1).
template <class G>
cplx integrate_k(G&& g, const QuadratureSpec& spec) {
    const double norm = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < spec.sphere3.nodes.size(); ++i) {
        const cplx v = cplx(g(spec.sphere3.nodes[i]));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("integrate_k: non-finite integrand");
        acc += spec.sphere3.weights[i] * v;
    }
    return norm * acc;
}

}  // namespace qhsf
