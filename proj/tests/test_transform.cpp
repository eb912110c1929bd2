// Spherical transform, inversion, convolution and translation identities.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qhsf/registry.hpp"
#include "qhsf/transform.hpp"

using namespace qhsf;

namespace {

const QuadratureSpec& standard_spec() {
    static const QuadratureSpec s = build_spec(Tier::standard);
    return s;
}

}  // namespace

TEST(Transform, GaussianMatchesClosedForm) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.5, 0.7}}) {
        const SpectralGrid S = sft(RadialFunction::gaussian(a, b), make_grid(GridShape::default_shape()), standard_spec());
        for (std::size_t ir = 0; ir < S.n_rad(); ++ir)
            for (std::size_t id = 0; id < S.n_dirs(); ++id)
                for (int n = 0; n <= S.n_max; ++n) {
                    const double ref = oracle::gaussian_transform(a, b, S.radii[ir], n);
                    EXPECT_NEAR(std::abs(S.at(ir, id, n) - ref), 0.0, 1e-8 * oracle::gaussian_mass())
                        << "rho=" << S.radii[ir] << " n=" << n;
                }
    }
}

TEST(Transform, DefaultGridShapeAndCsv) {
    const SpectralGrid S = sft(RadialFunction::gaussian(), GridShape::default_shape(), standard_spec());
    EXPECT_EQ(S.n_nodes() * S.n_count(), 6u * 4u * 9u);
    std::ostringstream os;
    write_spectral_csv(os, S);
    const std::string csv = os.str();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda_x,lambda_y,lambda_z,n,re,im");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 217);
    EXPECT_EQ(grid_metadata(S).at("rows"), 216);
}

TEST(Transform, ZeroFunctionGivesZeroGrid) {
    const SpectralGrid S = sft(RadialFunction::zero(), GridShape::default_shape(), standard_spec());
    for (const auto& v : S.values) EXPECT_EQ(v, cplx(0.0));
}

TEST(Transform, RejectsBadGrids) {
    GridShape s = GridShape::default_shape();
    s.r_lo = 0.0;  // log radii cannot start at the origin
    EXPECT_THROW(make_grid(s), InputError);
    s = GridShape::default_shape();
    s.n_max = -1;
    EXPECT_THROW(make_grid(s), InputError);
    EXPECT_THROW(make_node_grid({0, 0, 0}, 3), InputError);
    EXPECT_THROW(sft_at(RadialFunction::gaussian(), {0, 0, 0}, 3, standard_spec()), InputError);
    EXPECT_THROW(nlohmann::json({{"directions", "cubic"}}).get<GridShape>(), InputError);
}

TEST(Transform, FunctionOutsideTruncationBoxIsRejected) {
    const RadialFunction wide = RadialFunction::gaussian(0.01, 0.01);
    EXPECT_THROW(sft(wide, GridShape::default_shape(), standard_spec()), InputError);
}

TEST(Transform, DirectPathAgreesWithRadialPath) {
    QuadratureConfig c = QuadratureConfig::for_tier(Tier::fast);
    const QuadratureSpec spec = build_spec(c);
    const RadialFunction f = RadialFunction::gaussian();
    const SpectralGrid G = make_node_grid({0.3, -0.4, 0.5}, 4);
    const SpectralGrid a = sft(f, G, spec);
    const SpectralGrid b = sft_direct([f](const GroupPoint& p) { return f(p); }, G, spec);
    EXPECT_LE(grid_max_abs_diff(a, b), 1e-4 * oracle::gaussian_mass());
}

TEST(Transform, ConvolutionTheorem) {
    const RadialFunction f = RadialFunction::gaussian(1.0, 1.0), g = RadialFunction::gaussian(1.5, 0.7);
    GridShape sh = GridShape::default_shape();
    sh.n_max = 4;
    const SpectralGrid G = make_grid(sh);
    const SpectralGrid conv = convolution_transform(f, g, G, standard_spec());
    const SpectralGrid prod = grid_product(sft(f, G, standard_spec()), sft(g, G, standard_spec()));
    EXPECT_LE(grid_max_abs_diff(conv, prod), 5e-4);
}

TEST(Transform, IncompatibleGridsAreRejected) {
    const SpectralGrid a = make_grid(GridShape::default_shape());
    GridShape s = GridShape::default_shape();
    s.n_max = 3;
    EXPECT_THROW(grid_product(a, make_grid(s)), InputError);
}

TEST(Transform, TranslationIdentities) {
    GridShape sh = GridShape::default_shape();
    sh.n_max = 3;
    const SpectralGrid G = make_grid(sh);
    const RadialFunction h = RadialFunction::gaussian();
    for (Side side : {Side::left, Side::right}) {
        EXPECT_LE(translation_identity_residual(h, GroupPoint::identity(), side, G, standard_spec()).residual, 1e-10);
        const auto c = translation_identity_residual(h, GroupPoint::central({0.3, -0.2, 0.5}), side, G, standard_spec());
        EXPECT_LE(c.residual, standard_spec().tolerance());
        EXPECT_GT(c.swapped_residual, 1.0);  // the swapped factors are distinguishable
    }
    EXPECT_THROW(translation_identity_residual(h, GroupPoint::identity(2), Side::left, G, standard_spec()), InputError);
}

TEST(Inverse, CalibratedRoundTrip) {
    const RadialFunction ref = RadialFunction::gaussian();
    const SpectralGrid G = make_grid(GridShape::inversion_shape());
    const PlancherelFit fit = calibrate_plancherel(ref, G, standard_spec());
    EXPECT_TRUE(fit.weight.calibrated);
    EXPECT_LE(fit.fitted_error, fit.initial_error);
    EXPECT_NEAR(fit.weight.a, 2.0, 0.02);
    EXPECT_NEAR(fit.weight.c, 1.0 / (2.0 * std::pow(std::numbers::pi, 5)), 0.02 * fit.weight.c);

    const RadialFunction held_out = RadialFunction::gaussian(1.4, 1.2);
    const InverseSft inv(sft(held_out, G, standard_spec()), fit.weight);
    EXPECT_LE(roundtrip_error(held_out, inv), 5e-2);
}

TEST(Inverse, RejectsNonPositiveWeight) {
    const SpectralGrid G = make_grid(GridShape::default_shape());
    EXPECT_THROW(InverseSft(G, PlancherelWeight{-1.0, 2.0, true}), InputError);
}
