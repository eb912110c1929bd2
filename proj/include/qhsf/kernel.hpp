#pragma once

/**
 * @file kernel.hpp
 * @brief Littlewood–Paley kernels K_j^m = inverse transform of ψ(2^{-j}ν)m(ν), ν = e(λ,n), sampled
 *        along rays in (u, t), and their decay diagnostics.
 *
 * Since e is linear in |λ| and 𝓛 is homogeneous of degree 2, ψ(2^{-j}𝓛) lives at spatial scale
 * 2^{-j/2}: K_{j+1}(x) = 2^{Q/2} K_j(δ_{√2} x). Rays and the decay bound use that scale.
 * The spectral side uses an isotropic grid (the window depends on |λ| only) with log-spaced radii
 * covering exactly the window's support for n ≤ n_max; the trapezoid rule in ln ρ is spectrally
 * accurate because every window vanishes smoothly at both ends.
 */

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <ostream>
#include <utility>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhsf/errors.hpp"
#include "qhsf/hormander.hpp"
#include "qhsf/littlewood_paley.hpp"
#include "qhsf/parallel.hpp"
#include "qhsf/sublaplacian.hpp"
#include "qhsf/symbols.hpp"
#include "qhsf/transform.hpp"

namespace qhsf {

struct KernelPlan {
    int n_max = 160;
    int n_radii = 280;
    double norm_lo = 0.08;  // sampled homogeneous norms, in units of 2^{-j/2}
    double norm_hi = 8.0;
    int samples_per_ray = 81;
};

enum class Ray { u_axis, t_axis, mixed };

struct KernelGrid {
    int j = 0;
    std::string symbol;
    std::vector<GroupPoint> points;  // sorted by homogeneous norm
    std::vector<double> norms;
    std::vector<Ray> rays;
    std::vector<int> ray_index;  // position along the ray (0 = innermost)
    std::vector<cplx> values;
    std::shared_ptr<const InverseSft> source;  // evaluator of K_j (null for the zero kernel)

    [[nodiscard]] double scale() const { return std::pow(2.0, -0.5 * j); }
    [[nodiscard]] cplx eval(const GroupPoint& x) const { return source ? (*source)(x) : cplx(0.0); }
};

/// Point on a ray with homogeneous norm r.
inline GroupPoint ray_point(Ray ray, double r) {
    switch (ray) {
        case Ray::u_axis: return GroupPoint(Quaternion{r, 0, 0, 0}, Vec3{});
        case Ray::t_axis: return GroupPoint(Quaternion{}, Vec3{0, 0, r * r});
        case Ray::mixed: {
            const double ur = r * std::pow(0.5, 0.25), tr = r * r * std::sqrt(0.5) / std::sqrt(3.0);
            return GroupPoint(Quaternion{ur * 0.5, ur * 0.5, ur * 0.5, ur * 0.5}, Vec3{tr, tr, tr});
        }
    }
    return GroupPoint();
}

/// Spectral data (λ,n) ↦ ψ(2^{-j}e(λ,n))·m(e(λ,n)) on the isotropic grid covering the window.
inline SpectralGrid kernel_spectrum(const Symbol& m, int j, const LPPartition& part, const SpectralMap& map,
                                    const KernelPlan& plan) {
    if (map.n_max() < plan.n_max) throw InputError("dyadic_kernel: spectral map covers fewer n than the plan");
    GridShape sh;
    sh.directions = DirectionKind::isotropic;
    sh.radii = RadiusKind::log;
    sh.r_lo = std::ldexp(0.5, j) / map.kappa[static_cast<std::size_t>(plan.n_max)];
    sh.r_hi = std::ldexp(2.0, j) / map.kappa[0];
    sh.n_radii = plan.n_radii;
    sh.n_max = plan.n_max;
    SpectralGrid S = make_grid(sh);
    for (std::size_t ir = 0; ir < S.n_rad(); ++ir)
        for (int n = 0; n <= S.n_max; ++n) {
            const double nu = map(S.radii[ir], n);
            const double w = part.window(j, nu);
            if (w == 0.0) continue;
            const cplx v = w * m(nu);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw InputError("dyadic_kernel: symbol '" + m.descriptor + "' not finite at nu=" + std::to_string(nu));
            S.at(ir, 0, n) = v;
        }
    return S;
}

inline KernelGrid dyadic_kernel(const Symbol& m, int j, const LPPartition& part, const SpectralMap& map,
                                const PlancherelWeight& w, const KernelPlan& plan = {}) {
    if (!w.calibrated) throw StateError("dyadic_kernel: Plancherel weight is not calibrated");
    if (plan.samples_per_ray < 2 || !(plan.norm_lo > 0.0) || !(plan.norm_hi > plan.norm_lo))
        throw InputError("dyadic_kernel: invalid sampling plan");
    KernelGrid K;
    K.j = j;
    K.symbol = m.descriptor;
    const SpectralGrid S = kernel_spectrum(m, j, part, map, plan);
    const bool zero = std::all_of(S.values.begin(), S.values.end(), [](const cplx& v) { return v == cplx(0.0); });
    if (!zero) K.source = std::make_shared<const InverseSft>(S, w);
    const double s = K.scale();
    const std::vector<double> radii = log_grid(plan.norm_lo * s, plan.norm_hi * s, plan.samples_per_ray);
    struct Sample {
        double norm;
        Ray ray;
        int index;
    };
    std::vector<Sample> samples;
    for (Ray ray : {Ray::u_axis, Ray::t_axis, Ray::mixed})
        for (std::size_t i = 0; i < radii.size(); ++i) samples.push_back({radii[i], ray, static_cast<int>(i)});
    std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.norm < b.norm; });
    for (const auto& smp : samples) {
        K.points.push_back(ray_point(smp.ray, smp.norm));
        K.norms.push_back(smp.norm);
        K.rays.push_back(smp.ray);
        K.ray_index.push_back(smp.index);
    }
    K.values.assign(K.points.size(), cplx(0.0));
    if (K.source) parallel_for(K.points.size(), [&](std::size_t i) { K.values[i] = (*K.source)(K.points[i]); });
    for (const auto& v : K.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NumericError("dyadic_kernel: non-finite value");
    return K;
}

struct DecayFit {
    int N = 0;
    double C = 0.0;      // tightest constant over the fit samples
    double C_lsq = 0.0;  // least-squares constant over all samples
    double violation_ratio = 0.0;  // max over held-out samples of |K| / (C·bound)
};

struct KernelDecayReport {
    int j = 0;
    int Q = 10;
    double decades = 0.0;
    std::vector<DecayFit> fits;
    double cz_constant = 0.0;  // max |K(x)||x|^Q over the samples
    double tail_epsilon = 0.0;
    double integration_outer = 0.0;  // integrals cover |x| < integration_outer
    cplx tail_integral = 0.0;  // ∫_{|x|>ε} K
    cplx total_integral = 0.0;  // ∫ K
    double l1_norm = 0.0;       // ∫ |K|
};

inline void to_json(nlohmann::json& j, const DecayFit& f) {
    j = nlohmann::json{{"N", f.N}, {"C", f.C}, {"C_lsq", f.C_lsq}, {"violation_ratio", f.violation_ratio}};
}

inline void to_json(nlohmann::json& j, const KernelDecayReport& r) {
    j = nlohmann::json{{"j", r.j},
                       {"Q", r.Q},
                       {"decades", r.decades},
                       {"fits", r.fits},
                       {"cz_constant", r.cz_constant},
                       {"tail_epsilon", r.tail_epsilon},
                       {"integration_outer", r.integration_outer},
                       {"tail_integral", {r.tail_integral.real(), r.tail_integral.imag()}},
                       {"total_integral", {r.total_integral.real(), r.total_integral.imag()}},
                       {"l1_norm", r.l1_norm}};
}

namespace detail {
/**
 * (∫ K, ∫ |K|) over ε < |x| < outer for radial K(α, |t|) in coordinates α = R cos β, |t| = R sin β,
 * R = |x|²: dx = 4π³ R⁵ cos β sin² β d(ln R) dβ.
 */
inline std::pair<cplx, double> kernel_polar_integral(const KernelGrid& K, double eps, double outer, int nr = 96,
                                                     int nb = 32) {
    if (!K.source) return {0.0, 0.0};
    const Rule1D lr = gauss_legendre(nr, std::log(eps * eps), std::log(outer * outer));
    const Rule1D br = gauss_legendre(nb, 0.0, 0.5 * std::numbers::pi);
    std::vector<cplx> part(lr.size());
    std::vector<double> part_abs(lr.size());
    parallel_for(lr.size(), [&](std::size_t i) {
        const double R = std::exp(lr.x[i]);
        cplx acc = 0.0;
        double acc_abs = 0.0;
        for (std::size_t b = 0; b < br.size(); ++b) {
            const double c = std::cos(br.x[b]), s = std::sin(br.x[b]);
            const cplx v = K.source->eval(R * c, Vec3{0.0, 0.0, R * s});
            acc += br.w[b] * c * s * s * v;
            acc_abs += br.w[b] * c * s * s * std::abs(v);
        }
        const double jac = lr.w[i] * std::pow(R, 5);
        part[i] = jac * acc;
        part_abs[i] = jac * acc_abs;
    });
    cplx out = 0.0;
    double out_abs = 0.0;
    for (std::size_t i = 0; i < part.size(); ++i) {
        out += part[i];
        out_abs += part_abs[i];
    }
    const double c = 4.0 * std::pow(std::numbers::pi, 3);
    return {c * out, c * out_abs};
}
}  // namespace detail

/**
 * For each N: bound b(x) = 2^{jQ/2}(1 + 2^{j/2}|x|)^{-N}; C is the tightest constant over the samples at even
 * positions along each ray (including both ends) and the violation ratio is measured on the interleaved
 * odd positions (held out). Integrals run over ε < |x| < 2·max|x| by polar quadrature.
 */
inline KernelDecayReport kernel_decay_report(const KernelGrid& K, const std::vector<int>& N_list, int Q = 10) {
    if (K.norms.size() < 4) throw InputError("kernel_decay_report: too few samples");
    KernelDecayReport rep;
    rep.j = K.j;
    rep.Q = Q;
    rep.decades = std::log10(K.norms.back() / K.norms.front());
    if (rep.decades < 2.0 - 1e-9)
        throw InputError("kernel_decay_report: need >= 2 decades of |x| (got " + std::to_string(rep.decades) + ")");
    const double s = std::pow(2.0, 0.5 * K.j), amp = std::pow(2.0, 0.5 * K.j * Q);
    for (int N : N_list) {
        DecayFit f;
        f.N = N;
        std::vector<double> b(K.norms.size());
        for (std::size_t i = 0; i < b.size(); ++i) b[i] = amp * std::pow(1.0 + s * K.norms[i], -N);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (K.ray_index[i] % 2 == 0) f.C = std::max(f.C, std::abs(K.values[i]) / b[i]);
            num += std::abs(K.values[i]) * b[i];
            den += b[i] * b[i];
        }
        f.C_lsq = num / den;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (K.ray_index[i] % 2 == 0) continue;
            const double a = std::abs(K.values[i]);
            if (a == 0.0) continue;
            f.violation_ratio = std::max(f.violation_ratio, f.C > 0.0 ? a / (f.C * b[i]) : HUGE_VAL);
        }
        rep.fits.push_back(f);
    }
    for (std::size_t i = 0; i < K.norms.size(); ++i)
        rep.cz_constant = std::max(rep.cz_constant, std::abs(K.values[i]) * std::pow(K.norms[i], Q));
    rep.tail_epsilon = K.norms.front();
    const double outer = 2.0 * K.norms.back(), tiny = 1e-4 * K.norms.front();
    rep.integration_outer = outer;
    const auto [tail, tail_abs] = detail::kernel_polar_integral(K, rep.tail_epsilon, outer);
    const auto [core, core_abs] = detail::kernel_polar_integral(K, tiny, rep.tail_epsilon, 32, 32);
    rep.tail_integral = tail;
    rep.total_integral = tail + core;
    rep.l1_norm = tail_abs + core_abs;
    return rep;
}

/// max_x |K_{j+1}(x) − 2^{Q/2} K_j(δ_{√2}x)| / max|K_{j+1}| over the samples of K_{j+1}.
inline double kernel_two_scale_collapse(const KernelGrid& Kj, const KernelGrid& Kj1, int Q = 10) {
    if (Kj1.j != Kj.j + 1) throw InputError("kernel_two_scale_collapse: kernels must be at consecutive scales");
    double diff = 0.0, ref = 0.0;
    const double amp = std::pow(2.0, 0.5 * Q);
    for (std::size_t i = 0; i < Kj1.points.size(); ++i) {
        const cplx v = amp * Kj.eval(dilate(std::sqrt(2.0), Kj1.points[i]));
        diff = std::max(diff, std::abs(Kj1.values[i] - v));
        ref = std::max(ref, std::abs(Kj1.values[i]));
    }
    return ref > 0.0 ? diff / ref : diff;
}

/// CSV with columns norm, re, im, j.
inline void write_kernel_csv(std::ostream& os, const std::vector<KernelGrid>& kernels) {
    os << "norm,re,im,j\n";
    for (const auto& K : kernels)
        for (std::size_t i = 0; i < K.values.size(); ++i)
            os << detail::fmt_double(K.norms[i]) << ',' << detail::fmt_double(K.values[i].real()) << ','
               << detail::fmt_double(K.values[i].imag()) << ',' << K.j << '\n';
}

}  // namespace qhsf
