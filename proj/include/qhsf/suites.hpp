#pragma once

/**
 * @file suites.hpp
 * @brief Property suites behind `qhsf invariants` and the acceptance run: one function per numbered
 *        criterion (asserted checks) plus report-only diagnostics. Thresholds that depend on quadrature
 *        accuracy scale with the tier tolerance; structural thresholds are fixed.
 */

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qhsf/config.hpp"
#include "qhsf/fock.hpp"
#include "qhsf/hormander.hpp"
#include "qhsf/kernel.hpp"
#include "qhsf/multiplier.hpp"
#include "qhsf/registry.hpp"
#include "qhsf/report.hpp"
#include "qhsf/rng.hpp"

namespace qhsf {

/// Shared state for a suite run; calibration and the spectral map are computed once, on demand.
class SuiteContext {
public:
    explicit SuiteContext(RunConfig cfg) : cfg_(std::move(cfg)), spec_(cfg_.spec()) {}

    [[nodiscard]] const RunConfig& config() const { return cfg_; }
    [[nodiscard]] const QuadratureSpec& spec() const { return spec_; }
    [[nodiscard]] double tol() const { return spec_.tolerance(); }
    [[nodiscard]] std::uint64_t seed() const { return cfg_.seed; }

    const PlancherelFit& plancherel() {
        if (!fit_) fit_ = calibrate_plancherel(function_from_json(cfg_.reference), inversion_grid(), spec_);
        return *fit_;
    }
    void set_plancherel(const PlancherelFit& f) { fit_ = f; }

    const SpectralGrid& inversion_grid() {
        if (!inv_grid_) inv_grid_ = make_grid(cfg_.calibration_grid);
        return *inv_grid_;
    }

    /// Oracle eigenvalue map up to the kernel plan's n_max.
    const SpectralMap& spectral_map() {
        if (!map_) map_ = SpectralMap::from_oracle(std::max(KernelPlan{}.n_max, cfg_.calibration_grid.n_max));
        return *map_;
    }

private:
    RunConfig cfg_;
    QuadratureSpec spec_;
    std::optional<PlancherelFit> fit_;
    std::optional<SpectralGrid> inv_grid_;
    std::optional<SpectralMap> map_;
};

namespace detail {

inline double point_distance(const GroupPoint& a, const GroupPoint& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.u.size(); ++i) d = std::max(d, norm(a.u[i] - b.u[i]));
    return std::max(d, norm(a.t - b.t));
}

/// L^a_n(x) by the explicit alternating series in 50-digit arithmetic.
inline double laguerre_series_oracle(int n, int a, double x) {
    using mp = boost::multiprecision::cpp_bin_float_50;
    const mp X(x);
    mp sum = 0, xk = 1, fact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            xk *= X;
            fact *= k;
        }
        mp binom = 1;  // C(n+a, n-k)
        for (int i = 1; i <= n - k; ++i) binom = binom * mp(a + k + i) / i;
        const mp term = binom * xk / fact;
        sum += (k % 2) ? mp(-term) : term;
    }
    return static_cast<double>(sum);
}

inline Vec3 random_lambda(Rng& rng, double lo, double hi) {
    Vec3 d{rng.normal(), rng.normal(), rng.normal()};
    while (norm(d) < 1e-8) d = {rng.normal(), rng.normal(), rng.normal()};
    return rng.uniform(lo, hi) / norm(d) * d;
}

}  // namespace detail

// 1. Group axioms on 10³ seeded triples.
inline std::vector<Check> suite_group_axioms(SuiteContext& ctx) {
    Rng rng(ctx.seed() ^ 0x01);
    const int q = ctx.config().q;
    double assoc = 0.0, ident = 0.0, inv = 0.0;
    const GroupPoint e = GroupPoint::identity(q);
    for (int i = 0; i < 1000; ++i) {
        const GroupPoint a = rng.point(1.0, q), b = rng.point(1.0, q), c = rng.point(1.0, q);
        assoc = std::max(assoc, detail::point_distance(hq_mul(hq_mul(a, b), c), hq_mul(a, hq_mul(b, c))));
        ident = std::max({ident, detail::point_distance(hq_mul(a, e), a), detail::point_distance(hq_mul(e, a), a)});
        inv = std::max({inv, detail::point_distance(hq_mul(a, hq_inv(a)), e), detail::point_distance(hq_mul(hq_inv(a), a), e)});
    }
    return {check_le("group associativity", 1, assoc, 1e-12, "max over 1000 triples"),
            check_le("group identity", 1, ident, 1e-12),
            check_le("group inverse", 1, inv, 1e-12)};
}

// 2. k·(p r) = (k·p)(k·r).
inline std::vector<Check> suite_automorphism(SuiteContext& ctx) {
    Rng rng(ctx.seed() ^ 0x02);
    const int q = ctx.config().q;
    double r = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Quaternion k = rng.unit_quaternion();
        const GroupPoint p = rng.point(1.0, q), s = rng.point(1.0, q);
        r = std::max(r, detail::point_distance(k_act(k, hq_mul(p, s)), hq_mul(k_act(k, p), k_act(k, s))));
    }
    return {check_le("K acts by automorphisms", 2, r, 1e-12, "max over 1000 (k, p, r)")};
}

// 3. φ(e) = 1, |φ| ≤ 1, φ(g⁻¹) = conj φ(g).
inline std::vector<Check> suite_phi_normalization(SuiteContext& ctx) {
    Rng rng(ctx.seed() ^ 0x03);
    double at_e = 0.0, bound = 0.0, herm = 0.0;
    std::vector<Vec3> lams;
    for (int i = 0; i < 24; ++i) lams.push_back(detail::random_lambda(rng, 0.1, 10.0));
    for (const auto& l : lams)
        for (int n = 0; n <= 20; ++n) at_e = std::max(at_e, std::abs(phi_eval({l, n}, GroupPoint::identity()) - 1.0));
    for (int i = 0; i < 10000; ++i) {
        const SphericalParams p(lams[static_cast<std::size_t>(i) % lams.size()], static_cast<int>(rng.uniform() * 21.0));
        const GroupPoint g = rng.point(2.0);
        const cplx v = phi_eval(p, g);
        bound = std::max(bound, std::abs(v) - 1.0);
        herm = std::max(herm, std::abs(phi_eval(p, hq_inv(g)) - std::conj(v)));
    }
    return {check_le("phi(e) = 1", 3, at_e, 1e-12, "n <= 20, 24 lambda nodes"),
            check_le("|phi| <= 1", 3, bound, 1e-12, "max(|phi| - 1) over 10^4 points"),
            check_le("phi(g^-1) = conj phi(g)", 3, herm, 1e-12)};
}

// 4. Laguerre recurrence vs explicit series.
inline std::vector<Check> suite_laguerre(SuiteContext&) {
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n)
        for (int i = 0; i <= 1000; ++i) {
            const double w = 50.0 * i / 1000.0;
            const double s = detail::laguerre_series_oracle(n, 1, w);
            const double r = laguerre1(n, w);
            worst = std::max(worst, std::abs(r - s) / std::max(std::abs(s), 1e-300));
        }
    return {check_le("Laguerre recurrence vs series", 4, worst, 1e-10, "relative, n <= 20, w in [0,50]")};
}

// 5. Gram matrices of φ are positive semidefinite.
inline std::vector<Check> suite_positive_definite(SuiteContext& ctx) {
    Rng rng(ctx.seed() ^ 0x05);
    std::vector<GroupPoint> pts;
    for (int i = 0; i < 32; ++i) pts.push_back(rng.point(1.0));
    double worst = HUGE_VAL;
    for (const Vec3& l : {Vec3{0.0, 0.0, 0.5}, Vec3{0.6, -0.8, 0.0}, Vec3{1.0, 1.0, 1.0}})
        for (int n : {0, 2, 4, 6}) worst = std::min(worst, gram_min_eig({l, n}, pts));
    return {check_ge("Gram min eigenvalue", 5, worst, -1e-8, "32 points, n in {0,2,4,6}, 3 lambdas")};
}

// 6. Quadrature self-test.
inline std::vector<Check> suite_quadrature(SuiteContext& ctx) {
    const auto& spec = ctx.spec();
    const double exact = std::pow(std::numbers::pi, 3.5);
    const cplx full = integrate_hq([](const GroupPoint& p) { return std::exp(-p.u_norm2() - dot(p.t, p.t)); }, spec);
    const cplx radial = integrate_hq_radial([](double a, const Vec3& t) { return std::exp(-a - dot(t, t)); }, spec);
    return {check_le("Gaussian integral = pi^(7/2)", 6, std::abs(full - exact), 1e2 * ctx.tol(),
                     "absolute error, full 7-D rule"),
            check_le("radial vs full path", 6, std::abs(radial - full) / std::abs(full), 1e-5, "relative")};
}

// 7. Convolution theorem and translation identities.
inline std::vector<Check> suite_convolution(SuiteContext& ctx) {
    const auto& spec = ctx.spec();
    const double p35 = std::pow(std::numbers::pi, 3.5);
    const auto f = RadialFunction::gaussian(1.0, 1.0, 1.0 / p35);
    const auto g = RadialFunction::gaussian(1.5, 0.8, 1.5 * 1.5 * std::pow(0.8, 1.5) / p35);
    std::vector<Vec3> lattice;
    for (double x : {-1.0, 0.5, 1.5})
        for (double y : {-1.0, 0.5, 1.5})
            for (double z : {-1.0, 0.5, 1.5}) lattice.push_back({x, y, z});
    std::vector<double> res(lattice.size());
    parallel_for(lattice.size(), [&](std::size_t i) {
        const SpectralGrid G = make_node_grid(lattice[i], 3);
        res[i] = grid_max_abs_diff(convolution_transform(f, g, G, spec), grid_product(sft(f, G, spec), sft(g, G, spec)));
    });
    double conv = 0.0;
    for (double r : res) conv = std::max(conv, r);

    GridShape sh;
    sh.n_radii = 2;
    sh.n_max = 3;
    const SpectralGrid G = make_grid(sh);
    const auto h = RadialFunction::gaussian(1.0, 1.0);
    double ident = 0.0, central = 0.0, generic = 0.0, swapped_central = 0.0, swapped_generic = 0.0;
    for (Side side : {Side::left, Side::right}) {
        ident = std::max(ident, translation_identity_residual(h, GroupPoint::identity(), side, G, spec).residual);
        const auto c = translation_identity_residual(h, GroupPoint::central({0.3, -0.2, 0.5}), side, G, spec);
        central = std::max(central, c.residual);
        swapped_central = std::max(swapped_central, c.swapped_residual);
        const auto r = translation_identity_residual(h, GroupPoint(Quaternion{0.3, 0.1, -0.2, 0.2}, Vec3{0.1, 0.2, -0.3}),
                                                     side, G, spec);
        generic = std::max(generic, r.residual);
        swapped_generic = std::max(swapped_generic, r.swapped_residual);
    }
    return {check_le("convolution theorem (Gaussian pair)", 7, conv, 5e-4, "max over 27 lambda x 4 n"),
            check_le("translation identity: identity element", 7, ident, 1e-10),
            check_le("translation identity: central element", 7, central, ctx.tol()),
            report_value("translation identity: generic element", 7, generic),
            report_value("translation identity with swapped factors (central)", 7, swapped_central),
            report_value("translation identity with swapped factors (generic)", 7, swapped_generic)};
}

// 8. ‖f̂(λ)‖_op ≤ ‖f‖₁ on the truncated Fock space.
inline std::vector<Check> suite_norm_bound(SuiteContext& ctx) {
    const auto& spec = ctx.spec();
    struct TestFn {
        std::string name;
        GroupFunction f;
        Envelope env;
    };
    auto radial = [](const RadialFunction& r) { return TestFn{r.name, [r](const GroupPoint& p) { return r(p); }, r.env}; };
    const auto gauss = RadialFunction::gaussian(1.0, 1.0);
    const GroupPoint shift(Quaternion{0.3, 0.1, -0.2, 0.1}, Vec3{0.1, -0.1, 0.2});
    std::vector<TestFn> fns{
        radial(gauss),
        radial(RadialFunction::gaussian(2.0, 0.5)),
        radial(RadialFunction::gaussian(0.5, 2.0)),
        radial(RadialFunction::gaussian(1.5, 1.5, std::polar(1.0, 0.3))),
        radial(hermite_modulated(1.0, 1.0, 2)),
        radial(hermite_modulated(1.5, 1.0, 3)),
        radial(RadialFunction::combine(1.0, gauss, -0.5, RadialFunction::gaussian(2.0, 2.0))),
        {"translated gaussian", [gauss, shift](const GroupPoint& p) { return gauss(hq_mul(hq_inv(shift), p)); }, {0.8, 0.8}},
        {"plane-wave gaussian", [gauss](const GroupPoint& p) { return std::polar(1.0, 0.7 * p.t[0] - 0.4 * p.t[2]) * gauss(p); },
         {1.0, 1.0}},
        {"u-linear gaussian", [gauss](const GroupPoint& p) { return (p.u[0].x + 0.5 * p.u[0].w) * gauss(p); }, {1.0, 1.0}},
    };
    Rng rng(ctx.seed() ^ 0x08);
    std::vector<Vec3> lams;
    for (int i = 0; i < 5; ++i) lams.push_back(detail::random_lambda(rng, 0.5, 2.0));
    double worst = -HUGE_VAL;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& fn : fns)
        for (const auto& l : lams) {
            const OperatorMatrix M = group_fourier_matrix(fn.f, l, 6, spec, fn.env);
            const double op = M.op_norm();
            worst = std::max(worst, op - M.l1_norm_estimate);
            rows.push_back({{"function", fn.name}, {"lambda", l}, {"op_norm", op}, {"l1", M.l1_norm_estimate}});
        }
    Check c = check_le("operator norm <= L1 norm (D=6)", 8, worst, 1e-3, "max of ||f^(lambda)||_op - ||f||_1, 10 functions x 5 lambda");
    c.data = rows;
    return {c};
}

// 9. Littlewood–Paley partition of unity.
inline std::vector<Check> suite_partition(SuiteContext& ctx) {
    const LPPartition P = ctx.config().partition();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = std::pow(10.0, -3.0 + 6.0 * i / 999.0);
        worst = std::max(worst, std::abs(P.partial_sum(x) - 1.0));
    }
    const double support = std::abs(P.psi(0.4)) + std::abs(P.psi(2.5)) + std::abs(P.psi(0.5)) + std::abs(P.psi(2.0));
    return {check_le("partition of unity on [1e-3, 1e3]", 9, worst, 1e-12, "1000 log-spaced points"),
            check_le("psi support in (1/2, 2)", 9, support, 0.0)};
}

// 10. Hörmander checker calibration.
inline std::vector<Check> suite_hormander(SuiteContext&) {
    const auto one = hormander_dyadic_norm(constant_symbol(1.0), 1);
    double dev = 0.0;
    for (double v : one.sup_over_alpha) dev = std::max(dev, std::abs(v - 1.0));
    const auto lin = hormander_dyadic_norm(power_symbol(1.0), 1);
    const auto osc = hormander_dyadic_norm(imaginary_power_symbol(1.0), 1);
    const auto oneQ = hormander_dyadic_norm(constant_symbol(1.0), 10);
    const auto mih = mihlin_sup_norm(rational_symbol(1.0), 6);
    return {check_le("Hormander m=1 equals 1 on every shell (dim 1)", 10, dev, 1e-6),
            check_true("Hormander m=nu divergence flagged", 10, lin.divergent),
            check_true("Hormander m=nu^i not flagged", 10, !osc.divergent && std::isfinite(osc.value),
                       "value " + std::to_string(osc.value)),
            report_value("Hormander m=1 with dim=Q", 10, oneQ.value, "", oneQ),
            report_value("Mihlin (1+nu)^-1, a <= 6", 10, mih.value, "", mih)};
}

// 11. Sub-Laplacian finite-difference oracle.
inline std::vector<Check> suite_sublaplacian(SuiteContext&) {
    double res = 0.0, hom2 = 0.0, hom4 = 0.0;
    bool monotone = true;
    nlohmann::json rows = nlohmann::json::array();
    for (const Vec3& l : {Vec3{0.0, 0.0, 1.0}, Vec3{0.3, -0.4, 0.5}, Vec3{1.0, 2.0, -0.5}}) {
        const auto a = sublap_eigenvalues(l, 6, 1e-3);
        const auto b = sublap_eigenvalues(2.0 * l, 6, 1e-3);
        const auto c = sublap_eigenvalues(4.0 * l, 6, 1e-3);
        for (std::size_t n = 0; n < a.size(); ++n) {
            res = std::max({res, a[n].residual / std::abs(a[n].e), b[n].residual / std::abs(b[n].e)});
            hom2 = std::max(hom2, std::abs(b[n].e / a[n].e - 2.0) / 2.0);
            hom4 = std::max(hom4, std::abs(c[n].e / a[n].e - 4.0) / 4.0);
            if (n > 0 && !(a[n].e > a[n - 1].e)) monotone = false;
            rows.push_back({{"lambda", l}, {"n", n}, {"e", a[n].e}, {"residual", a[n].residual}});
        }
    }
    return {check_le("sub-Laplacian fit residual/|e| (h=1e-3, n<=6)", 11, res, 1e-3),
            check_le("homogeneity e(2 lambda)/e(lambda) = 2", 11, hom2, 1e-2, "relative deviation"),
            check_le("homogeneity e(4 lambda)/e(lambda) = 4", 11, hom4, 1e-2, "relative deviation"),
            report_value("eigenvalue increasing in n", 11, monotone ? 1.0 : 0.0, "", rows)};
}

// 12. Kernel decay and two-scale collapse.
inline std::vector<Check> suite_kernel(SuiteContext& ctx) {
    const PlancherelWeight w = ctx.plancherel().weight;
    const SpectralMap& map = ctx.spectral_map();
    const LPPartition P = ctx.config().partition();
    const Symbol one = constant_symbol(1.0);
    const KernelGrid K0 = dyadic_kernel(one, 0, P, map, w), K1 = dyadic_kernel(one, 1, P, map, w);
    const KernelDecayReport rep = kernel_decay_report(K0, {6, 11, 16}, 10);
    const DecayFit* f11 = nullptr;
    for (const auto& f : rep.fits)
        if (f.N == 11) f11 = &f;
    const double collapse = kernel_two_scale_collapse(K0, K1, 10);
    const double sup_m = symbol_sup(one, kernel_spectrum(one, 0, P, map, KernelPlan{}), map);
    return {check_ge("kernel samples span >= 2 decades", 12, rep.decades, 2.0 - 1e-9),
            check_le("kernel bound N=11 violation ratio (j=0)", 12, f11->violation_ratio, 1.0,
                     "C = " + std::to_string(f11->C)),
            check_le("two-scale collapse K_1 vs 2^(Q/2) K_0(delta_sqrt2 x)", 12, collapse, 0.10),
            report_value("kernel decay fits", 12, rep.cz_constant, "Calderon-Zygmund constant; tail integral and fits in data", rep),
            report_value("sup|m| on grid vs kernel L1 estimate", 12, rep.l1_norm, "sup|m| = " + std::to_string(sup_m))};
}

// 13. Calibrated inversion round trip and the m ≡ 1 multiplier.
inline std::vector<Check> suite_inversion(SuiteContext& ctx) {
    const auto& spec = ctx.spec();
    const PlancherelFit& fit = ctx.plancherel();
    const SpectralGrid& G = ctx.inversion_grid();
    const RadialFunction B = function_from_json(ctx.config().second_function);
    const InverseSft inv(sft(B, G, spec), fit.weight);
    const double rt = roundtrip_error(B, inv);
    const auto T = apply_multiplier(constant_symbol(1.0), B, G, fit.weight, ctx.spectral_map(), spec);
    const double mt = multiplier_error(T, B);
    nlohmann::json fitj = fit;
    return {check_le("held-out round trip relative L2 error", 13, rt, 5e-2, "calibrated on the reference, applied to " + B.name),
            check_le("m=1 multiplier matches round trip", 13, std::abs(mt - rt), 1e-10,
                     "multiplier error " + std::to_string(mt)),
            report_value("fitted Plancherel weight", 13, fit.weight.a, "c = " + std::to_string(fit.weight.c), fitj)};
}

// 14. Reproducibility of CSV outputs.
inline std::vector<Check> suite_reproducibility(SuiteContext& ctx) {
    auto run = [&] {
        std::ostringstream os;
        const RadialFunction f = function_from_json(ctx.config().function);
        write_spectral_csv(os, sft(f, make_grid(ctx.config().grid), ctx.spec()));
        write_kernel_csv(os, {dyadic_kernel(constant_symbol(1.0), 0, ctx.config().partition(), ctx.spectral_map(),
                                            ctx.plancherel().weight)});
        return os.str();
    };
    const std::string a = run(), b = run();
    return {check_true("identical CSV output for identical config", 14, a == b, std::to_string(a.size()) + " bytes")};
}

// Report-only and extra invariants.
inline std::vector<Check> suite_diagnostics(SuiteContext& ctx) {
    const auto& spec = ctx.spec();
    std::vector<Check> out;
    Rng rng(ctx.seed() ^ 0x0d);
    double fe = 0.0;
    QuadratureConfig fine = spec.config;
    fine.s3_chi = fine.s3_theta = 12;
    fine.s3_phi = 24;
    const QuadratureSpec fine_spec = build_spec(fine);
    for (int i = 0; i < 8; ++i) {
        const SphericalParams p(detail::random_lambda(rng, 0.3, 2.0), i % 4);
        fe = std::max(fe, spherical_residual(p, rng.point(0.8), rng.point(0.8), fine_spec));
    }
    out.push_back(report_value("spherical functional equation residual", 0, fe,
                               "8 random (g, h, lambda, n), 12x12x24 S3 rule"));

    const auto rep = calibrate_rep(Vec3{0.3, -0.5, 0.8}, ctx.seed());
    out.push_back(report_value("pi_lambda homomorphism residual (selected triple)", 0, rep.best_residual,
                               rep.canonical_default ? "canonical triple (1,2,2) selected" : "non-canonical triple selected", rep));

    const SpectralGrid G = make_grid(ctx.config().grid);
    const RadialFunction f = function_from_json(ctx.config().function);
    const auto d = multiplier_direct_discrepancy(constant_symbol(1.0), f, G, ctx.spectral_map(), spec);
    out.push_back(report_value("direct-integral multiplier vs spectral (m=1)", 0, d.relative, "relative", d));

    const RadialFunction g = RadialFunction::gaussian(1.5, 0.7);
    const SpectralGrid a = sft(RadialFunction::combine(2.0, f, -0.5, g), G, spec);
    SpectralGrid b = sft(f, G, spec);
    const SpectralGrid gh = sft(g, G, spec);
    for (std::size_t i = 0; i < b.values.size(); ++i) b.values[i] = 2.0 * b.values[i] - 0.5 * gh.values[i];
    double scale = 0.0;
    for (const auto& v : b.values) scale = std::max(scale, std::abs(v));
    // the combination integrates on its own (slower) envelope, so agreement is at quadrature level
    out.push_back(check_le("transform linearity", 0, grid_max_abs_diff(a, b), ctx.tol() * scale,
                           "threshold: tier tolerance x max|f^|"));

    const SpectralGrid fh = sft(f, G, spec);
    double sup = 0.0;
    for (const auto& v : fh.values) sup = std::max(sup, std::abs(v));
    const double l1 = std::abs(integrate_hq_radial([&](double al, const Vec3& t) { return std::abs(f(al, t)); }, spec));
    out.push_back(check_le("sup |f^| <= ||f||_1", 0, sup - l1, ctx.tol()));

    const SpectralMap& map = ctx.spectral_map();
    const SpectralGrid once = apply_symbol(exp_symbol(1.0), apply_symbol(exp_symbol(2.0), fh, map), map);
    const SpectralGrid both = apply_symbol(product_symbol(exp_symbol(1.0), exp_symbol(2.0)), fh, map);
    out.push_back(check_le("spectral multiplicativity", 0, grid_max_abs_diff(once, both), 1e-10));

    const auto [r1, r2] = multiplier_algebra_residual(exp_symbol(1.0), exp_symbol(2.0), f, g, G, map, spec);
    out.push_back(check_le("multiplier algebra T_m(f*g) = T_m f * g", 0, r1, 5e-4));
    out.push_back(check_le("multiplier algebra T_m1 f * T_m2 g = T_m1m2 (f*g)", 0, r2, 5e-4));
    return out;
}

using SuiteFn = std::vector<Check> (*)(SuiteContext&);

struct SuiteEntry {
    int criterion;
    const char* title;
    SuiteFn fn;
};

inline const std::vector<SuiteEntry>& criteria_suites() {
    static const std::vector<SuiteEntry> s{
        {1, "group axioms", suite_group_axioms},
        {2, "automorphism identity", suite_automorphism},
        {3, "phi normalization", suite_phi_normalization},
        {4, "Laguerre oracle", suite_laguerre},
        {5, "positive definiteness", suite_positive_definite},
        {6, "quadrature self-test", suite_quadrature},
        {7, "convolution theorem and translations", suite_convolution},
        {8, "operator norm bound", suite_norm_bound},
        {9, "Littlewood-Paley partition", suite_partition},
        {10, "Hormander checker calibration", suite_hormander},
        {11, "sub-Laplacian oracle", suite_sublaplacian},
        {12, "kernel decay", suite_kernel},
        {13, "inversion round trip", suite_inversion},
        {14, "reproducibility", suite_reproducibility},
    };
    return s;
}

/// Runs every criterion suite plus diagnostics; exceptions inside a suite become failed checks.
inline Report run_invariants(SuiteContext& ctx) {
    Report rep;
    rep.suite = "invariants";
    rep.config = ctx.config();
    const auto t0 = std::chrono::steady_clock::now();
    auto guarded = [&](int criterion, const std::string& title, SuiteFn fn) {
        try {
            for (auto& c : timed([&] { return fn(ctx); })) rep.checks.push_back(std::move(c));
        } catch (const std::exception& e) {
            Check c = check_true(title, criterion, false, std::string("exception: ") + e.what());
            rep.checks.push_back(c);
        }
    };
    for (const auto& s : criteria_suites()) guarded(s.criterion, s.title, s.fn);
    guarded(0, "diagnostics", suite_diagnostics);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace qhsf
