// Spherical functions, K-projections and the Fock-space representation.

#include <gtest/gtest.h>

#include <cmath>

#include "qhsf/fock.hpp"
#include "qhsf/registry.hpp"
#include "qhsf/rng.hpp"
#include "qhsf/spherical.hpp"

using namespace qhsf;

TEST(Spherical, NormalisedAtIdentityAndBounded) {
    Rng rng(11);
    for (int n = 0; n <= 20; ++n) {
        const SphericalParams p(rng.vec3(-2, 2), n);
        EXPECT_NEAR(std::abs(phi_eval(p, GroupPoint::identity()) - 1.0), 0.0, 1e-12);
        for (int s = 0; s < 50; ++s) {
            const GroupPoint g = rng.point(3.0);
            EXPECT_LE(std::abs(phi_eval(p, g)), 1.0 + 1e-12);
            EXPECT_LT(std::abs(phi_eval(p, hq_inv(g)) - std::conj(phi_eval(p, g))), 1e-12);
        }
    }
}

TEST(Spherical, InvariantUnderK) {
    Rng rng(12);
    const SphericalParams p({0.4, -1.0, 0.2}, 3);
    for (int s = 0; s < 50; ++s) {
        const GroupPoint g = rng.point();
        EXPECT_LT(std::abs(phi_eval(p, k_act(rng.unit_quaternion(), g)) - phi_eval(p, g)), 1e-13);
    }
}

TEST(Spherical, RejectsBadParameters) {
    EXPECT_THROW(SphericalParams({0, 0, 0}, 1), InputError);
    EXPECT_THROW(SphericalParams({1, 0, 0}, -1), InputError);
    EXPECT_THROW(gram_min_eig(SphericalParams({1, 0, 0}, 0), {}), InputError);
}

TEST(Spherical, FunctionalEquation) {
    // the K-average needs a finer S³ rule than the default to resolve φ(g·k·h)
    QuadratureConfig c = QuadratureConfig::for_tier(Tier::standard);
    c.s3_chi = c.s3_theta = 12;
    c.s3_phi = 24;
    const QuadratureSpec spec = build_spec(c);
    Rng rng(13);
    for (int s = 0; s < 4; ++s) {
        const SphericalParams p(rng.vec3(0.3, 1.5), s);
        EXPECT_LT(spherical_residual(p, rng.point(0.7), rng.point(0.7), spec), 1e-12);
    }
}

TEST(Spherical, PositiveDefiniteGram) {
    Rng rng(14);
    std::vector<GroupPoint> pts;
    for (int i = 0; i < 32; ++i) pts.push_back(rng.point(1.5));
    for (int n : {0, 2, 4, 6}) EXPECT_GE(gram_min_eig(SphericalParams({0.2, 0.9, -0.4}, n), pts), -1e-8);
}

TEST(Spherical, BiinvariantProjectionFixesSphericalFunctions) {
    const QuadratureSpec spec = build_spec(Tier::fast);
    const SphericalParams p({0.0, 0.7, 0.0}, 2);
    const MotionFunction f = [p](const MotionElement& m) { return phi_eval(p, m.point); };
    const MotionFunction proj = biinvariant_project(f, spec);
    Rng rng(15);
    for (int s = 0; s < 4; ++s) {
        const MotionElement g{rng.unit_quaternion(), rng.point()};
        EXPECT_LT(std::abs(proj(g) - phi_eval(p, g.point)), 1e-10);
        // constant on double cosets
        const MotionElement k{rng.unit_quaternion(), GroupPoint::identity()};
        EXPECT_LT(std::abs(proj(motion_mul(k, g)) - proj(g)), 1e-10);
    }
}

TEST(Spherical, RadializationDependsOnlyOnRadius) {
    const QuadratureSpec spec = build_spec(Tier::standard);
    const GroupFunction f = [](const GroupPoint& p) { return std::exp(-norm2(p.u[0] - Quaternion{0.5, 0, 0, 0})); };
    const RadialFunction r = radialize(f, spec);
    const GroupPoint a(Quaternion{0.6, 0, 0, 0}, {}), b(Quaternion{0, 0, 0.6, 0}, {});
    EXPECT_LT(std::abs(radial_average(f, a, spec) - radial_average(f, b, spec)), 1e-8);
    EXPECT_LT(std::abs(r(0.36, Vec3{}) - radial_average(f, a, spec)), 1e-14);
}

TEST(Fock, SelectedTripleIsAHomomorphism) {
    const RepCalibration cal = calibrate_rep({0.3, -0.5, 0.8}, 0);
    EXPECT_LT(cal.best_residual, 1e-12);
    EXPECT_TRUE(cal.canonical_default);
    EXPECT_EQ(cal.best, (RepCoefficients{1.0, 2.0, 2.0}));
    EXPECT_GT(homomorphism_residual({0.3, -0.5, 0.8}, {1.0, 1.0, 1.0}), 1e-3);
}

TEST(Fock, CentralElementsActByCharacter) {
    const Vec3 lambda{0, 0, 1.3};
    const FockBasis basis = fock_basis(lambda, 3);
    const Eigen::MatrixXcd P = pi_matrix(basis, GroupPoint::central({0, 0, 0.4}));
    const auto n = static_cast<Eigen::Index>(basis.size());
    EXPECT_LT((P - std::polar(1.0, 1.3 * 0.4) * Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-12);
}

TEST(Fock, OperatorNormBoundedByL1) {
    const QuadratureSpec spec = build_spec(Tier::standard);
    const RadialFunction g = RadialFunction::gaussian(1.0, 1.0);
    const GroupFunction f = [g](const GroupPoint& p) { return g(p); };
    for (double l : {0.3, 1.0, 3.0}) {
        const OperatorMatrix M = group_fourier_matrix(f, {0, 0, l}, 6, spec, g.env);
        EXPECT_EQ(M.M.rows(), 210);  // C(6+4, 4) basis functions of degree ≤ 6
        EXPECT_LE(M.op_norm(), M.l1_norm_estimate + 1e-3);
    }
    const nlohmann::json j = group_fourier_matrix(f, {0, 0, 1.0}, 1, spec, g.env);
    EXPECT_EQ(j.at("matrix").size(), 5u);
    EXPECT_EQ(j.at("matrix")[0][0].size(), 2u);
}

TEST(Registry, BuiltInsAndErrors) {
    for (const auto& name : function_names()) {
        const RadialFunction f = function_from_json({{"name", name}});
        EXPECT_TRUE(std::isfinite(std::abs(f(0.5, Vec3{0.1, 0.2, 0.3})))) << name;
    }
    EXPECT_THROW(function_from_json({{"name", "nosuch"}}), InputError);
    EXPECT_THROW(function_from_json({{"name", "gaussian"}, {"a", -1.0}}), InputError);
    const RadialFunction bump = bump_function(2.0);
    EXPECT_EQ(bump(GroupPoint(Quaternion{2.5, 0, 0, 0}, {})), cplx(0.0));
    EXPECT_NEAR(hermite_phys(3, 0.5), 8 * 0.125 - 12 * 0.5, 1e-14);
}
