// Quaternion algebra, group law, quadrature rules and Laguerre polynomials.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhsf/group.hpp"
#include "qhsf/laguerre.hpp"
#include "qhsf/quadrature.hpp"
#include "qhsf/rng.hpp"
#include "qhsf/spherical.hpp"

using namespace qhsf;

namespace {

double qdist(const Quaternion& a, const Quaternion& b) { return norm(a - b); }

double pdist(const GroupPoint& a, const GroupPoint& b) {
    double d = norm(a.t - b.t);
    for (std::size_t i = 0; i < a.u.size(); ++i) d = std::max(d, norm(a.u[i] - b.u[i]));
    return d;
}

}  // namespace

TEST(Quaternion, HamiltonUnits) {
    const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
    EXPECT_EQ(i * j, k);
    EXPECT_EQ(j * i, -k);
    EXPECT_EQ(i * i, -Quaternion::one());
    EXPECT_EQ(i * j * k, -Quaternion::one());
}

TEST(Quaternion, NormIsMultiplicativeAndConjugationReverses) {
    Rng rng(1);
    for (int s = 0; s < 100; ++s) {
        const Quaternion a = rng.quaternion(), b = rng.quaternion();
        EXPECT_NEAR(norm(a * b), norm(a) * norm(b), 1e-14);
        EXPECT_LT(qdist(qconj(a * b), qconj(b) * qconj(a)), 1e-15);
        EXPECT_NEAR(dot(a, b), (qconj(a) * b).w, 1e-15);
    }
}

TEST(Quaternion, NormalizeRejectsZero) {
    EXPECT_THROW(qnormalize(Quaternion{}), DomainError);
    EXPECT_TRUE(is_unit(qnormalize({1, 2, 3, 4})));
}

TEST(Group, AxiomsOnRandomTriples) {
    Rng rng(7);
    for (int s = 0; s < 200; ++s) {
        const GroupPoint a = rng.point(2.0), b = rng.point(2.0), c = rng.point(2.0);
        EXPECT_LT(pdist(hq_mul(hq_mul(a, b), c), hq_mul(a, hq_mul(b, c))), 1e-12);
        EXPECT_EQ(hq_mul(a, GroupPoint::identity()), a);
        EXPECT_LT(pdist(hq_mul(a, hq_inv(a)), GroupPoint::identity()), 1e-15);
    }
}

TEST(Group, NonCommutativeWithCentralCommutator) {
    const GroupPoint a(Quaternion{1, 0, 0, 0}, {}), b(Quaternion{0, 1, 0, 0}, {});
    const GroupPoint ab = hq_mul(a, b), ba = hq_mul(b, a);
    EXPECT_EQ(ab.u, ba.u);
    EXPECT_GT(norm(ab.t - ba.t), 1.0);
    // central elements commute with everything
    const GroupPoint z = GroupPoint::central({0.3, -1.0, 2.0});
    EXPECT_LT(pdist(hq_mul(a, z), hq_mul(z, a)), 1e-15);
}

TEST(Group, AutomorphismsAndDilations) {
    Rng rng(3);
    for (int s = 0; s < 100; ++s) {
        const Quaternion k = rng.unit_quaternion();
        const GroupPoint p = rng.point(), r = rng.point();
        EXPECT_LT(pdist(k_act(k, hq_mul(p, r)), hq_mul(k_act(k, p), k_act(k, r))), 1e-13);
        EXPECT_LT(pdist(dilate(1.7, hq_mul(p, r)), hq_mul(dilate(1.7, p), dilate(1.7, r))), 1e-12);
        EXPECT_NEAR(homogeneous_norm(dilate(2.5, p)), 2.5 * homogeneous_norm(p), 1e-12);
        EXPECT_NEAR(homogeneous_norm(k_act(k, p)), homogeneous_norm(p), 1e-13);
    }
}

TEST(Group, MotionGroupActsOnTheGroup) {
    Rng rng(5);
    for (int s = 0; s < 50; ++s) {
        const MotionElement g{rng.unit_quaternion(), rng.point()}, h{rng.unit_quaternion(), rng.point()};
        const GroupPoint x = rng.point();
        EXPECT_LT(pdist(motion_act(motion_mul(g, h), x), motion_act(g, motion_act(h, x))), 1e-12);
        EXPECT_LT(pdist(motion_act(motion_identity(), x), x), 1e-15);
    }
}

TEST(Group, InputValidation) {
    EXPECT_THROW(hq_mul(GroupPoint::identity(1), GroupPoint::identity(2)), InputError);
    EXPECT_THROW(k_act(Quaternion{2, 0, 0, 0}, GroupPoint::identity()), InputError);
    EXPECT_THROW(dilate(0.0, GroupPoint::identity()), InputError);
    EXPECT_THROW(group_constants(0), InputError);
    EXPECT_EQ(group_constants(1).Q, 10);
    EXPECT_EQ(group_constants(2).Q, 14);
    // q = 2 products compose coordinate-wise
    const GroupPoint a(QuatVec{{1, 0, 0, 0}, {0, 1, 0, 0}}, {}), b(QuatVec{{0, 1, 0, 0}, {1, 0, 0, 0}}, {});
    EXPECT_EQ(hq_mul(a, b).q(), 2);
}

TEST(GaussRules, PolynomialExactness) {
    const Rule1D gl = gauss_legendre(8, 0.0, 2.0);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.size(); ++i) s += gl.w[i] * std::pow(gl.x[i], 15);
    EXPECT_NEAR(s, std::pow(2.0, 16) / 16.0, 1e-9);

    const Rule1D lag = gauss_laguerre(10, 1.0);  // ∫ x e^{-x} x^k = (k+1)!
    s = 0.0;
    for (std::size_t i = 0; i < lag.size(); ++i) s += lag.w[i] * std::pow(lag.x[i], 5);
    EXPECT_NEAR(s, 720.0, 1e-9);

    const Rule1D gh = gauss_hermite(12);  // ∫ x⁴ e^{-x²} = 3√π/4
    s = 0.0;
    for (std::size_t i = 0; i < gh.size(); ++i) s += gh.w[i] * std::pow(gh.x[i], 4);
    EXPECT_NEAR(s, 0.75 * std::sqrt(std::numbers::pi), 1e-13);
}

TEST(Quadrature, GaussianMassOnBothPaths) {
    const QuadratureSpec spec = build_spec(Tier::standard);
    const cplx full = integrate_hq([](const GroupPoint& p) { return std::exp(-p.u_norm2() - dot(p.t, p.t)); }, spec);
    EXPECT_NEAR(full.real(), oracle::gaussian_mass(), 1e-4);
    const cplx radial = integrate_hq_radial([](double a, const Vec3& t) { return std::exp(-a - dot(t, t)); }, spec);
    EXPECT_LE(std::abs(radial - full) / std::abs(full), 1e-5);
}

TEST(Quadrature, HaarMeasureIsNormalised) {
    const QuadratureSpec spec = build_spec(Tier::fast);
    EXPECT_NEAR(integrate_k([](const Quaternion&) { return 1.0; }, spec).real(), 1.0, 1e-13);
    // ∫_K k_w² dk = 1/4 by symmetry of the four coordinates
    EXPECT_NEAR(integrate_k([](const Quaternion& k) { return k.w * k.w; }, spec).real(), 0.25, 1e-12);
}

TEST(Quadrature, TiersAndOverrides) {
    EXPECT_EQ(parse_tier("strict"), Tier::strict);
    EXPECT_THROW(parse_tier("sloppy"), InputError);
    EXPECT_LT(tier_tolerance(Tier::strict), tier_tolerance(Tier::standard));
    EXPECT_LT(tier_tolerance(Tier::standard), tier_tolerance(Tier::fast));
    QuadratureConfig c = QuadratureConfig::for_tier(Tier::fast);
    nlohmann::json j = c;
    j["t_nodes"] = 30;
    EXPECT_EQ(j.get<QuadratureConfig>().t_nodes, 30);
}

TEST(Quadrature, NonFiniteIntegrandIsReported) {
    const QuadratureSpec spec = build_spec(Tier::fast);
    EXPECT_THROW(integrate_hq([](const GroupPoint&) { return std::nan(""); }, spec), NumericError);
}

TEST(Laguerre, MatchesExplicitSeries) {
    for (int n = 0; n <= 20; ++n)
        for (double x : {0.0, 0.3, 1.0, 4.0, 11.5, 27.0, 50.0}) {
            const double ref = oracle::laguerre_series(n, 1, x);
            EXPECT_LE(std::abs(laguerre1(n, x) - ref), 1e-10 * std::max(1.0, std::abs(ref))) << "n=" << n << " x=" << x;
        }
}

TEST(Laguerre, LowOrdersAndBatch) {
    EXPECT_DOUBLE_EQ(laguerre1(0, 3.0), 1.0);
    EXPECT_DOUBLE_EQ(laguerre1(1, 3.0), -1.0);  // 2 - x
    EXPECT_DOUBLE_EQ(laguerre(2, 0.0, 1.0), -0.5);
    const auto all = laguerre1_all(12, 2.5);
    for (int n = 0; n <= 12; ++n) EXPECT_DOUBLE_EQ(all[static_cast<std::size_t>(n)], laguerre1(n, 2.5));
    EXPECT_NEAR(laguerre1(5, 0.0), 6.0, 1e-14);  // L¹_n(0) = n+1
}

TEST(Laguerre, ScaledProfilesStayFiniteForLargeArguments) {
    std::vector<double> v(201);
    phi_radial_all(200, 3.0, 400.0, v.data());
    for (double x : v) {
        EXPECT_TRUE(std::isfinite(x));
        EXPECT_LE(std::abs(x), 1.0 + 1e-12);
    }
}
