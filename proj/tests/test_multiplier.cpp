// Littlewood–Paley partition, symbols, Hörmander/Mihlin checkers, sub-Laplacian oracle,
// dyadic kernels and spectral multipliers.

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qhsf/hormander.hpp"
#include "qhsf/kernel.hpp"
#include "qhsf/multiplier.hpp"
#include "qhsf/sublaplacian.hpp"

using namespace qhsf;

namespace {

const QuadratureSpec& standard_spec() {
    static const QuadratureSpec s = build_spec(Tier::standard);
    return s;
}

const SpectralMap& oracle_map() {
    static const SpectralMap m = SpectralMap::from_oracle(KernelPlan{}.n_max);
    return m;
}

const PlancherelWeight& calibrated_weight() {
    static const PlancherelWeight w = calibrate_plancherel(RadialFunction::gaussian(),
                                                           make_grid(GridShape::inversion_shape()), standard_spec())
                                          .weight;
    return w;
}

}  // namespace

TEST(LittlewoodPaley, PartitionOfUnity) {
    const LPPartition p = lp_build(-12, 12);
    for (int i = 0; i < 1000; ++i) {
        const double x = std::pow(10.0, -3.0 + 6.0 * i / 999.0);
        EXPECT_NEAR(p.partial_sum(x), 1.0, 1e-12) << "x=" << x;
    }
    EXPECT_EQ(p.psi(0.5), 0.0);
    EXPECT_EQ(p.psi(2.0), 0.0);
    EXPECT_GT(p.psi(1.0), 0.0);
    EXPECT_EQ(lp_cutoff(1.0), 1.0);
    EXPECT_EQ(lp_cutoff(2.0), 0.0);
    EXPECT_THROW(lp_build(3, 1), InputError);
}

TEST(Symbols, BuiltInsAndRegistry) {
    EXPECT_EQ(symbol_from_json({{"name", "constant"}, {"value", 2.0}})(7.0), cplx(2.0));
    EXPECT_NEAR(symbol_from_json({{"name", "power"}, {"p", 2.0}})(3.0).real(), 9.0, 1e-14);
    EXPECT_NEAR(std::abs(imaginary_power_symbol(1.0)(5.0)), 1.0, 1e-15);
    EXPECT_NEAR(rational_symbol(1.0)(1.0).real(), 0.5, 1e-15);
    EXPECT_NEAR(exp_symbol(2.0)(0.5).real(), std::exp(-1.0), 1e-15);
    EXPECT_THROW(symbol_from_json({{"name", "nosuch"}}), InputError);
    EXPECT_THROW(symbol_from_json({{"value", 1.0}}), InputError);
}

TEST(Symbols, TableInterpolatesAndRefusesToExtrapolate) {
    const std::vector<double> nu{0.1, 1.0, 10.0, 100.0, 1000.0};
    std::vector<double> re;
    for (double v : nu) re.push_back(std::log(v));
    const Symbol t = table_symbol(nu, re);
    for (std::size_t i = 0; i < nu.size(); ++i) EXPECT_NEAR(t(nu[i]).real(), re[i], 1e-14);
    EXPECT_NEAR(t(31.6).real(), std::log(31.6), 1e-12);  // linear in ln ν is reproduced exactly
    EXPECT_TRUE(std::isnan(t(0.01).real()));
    EXPECT_THROW(table_symbol({1, 2, 3}, {1, 2, 3}), InputError);
    EXPECT_THROW(table_symbol({1, 3, 2, 4}, {1, 2, 3, 4}), InputError);
}

TEST(Hormander, ConstantSymbolHasUnitNormOnEveryShell) {
    const HormanderReport r = hormander_dyadic_norm(constant_symbol(1.0), 1);
    EXPECT_NEAR(r.value, 1.0, 1e-6);
    for (const auto& row : r.table)
        for (double v : row) EXPECT_LE(v, 1.0 + 1e-6);
    EXPECT_NEAR(r.table[0][0], 1.0, 1e-6);
    EXPECT_FALSE(r.divergent);
}

TEST(Hormander, DivergenceFlag) {
    EXPECT_TRUE(hormander_dyadic_norm(power_symbol(1.0), 1).divergent);
    EXPECT_FALSE(hormander_dyadic_norm(imaginary_power_symbol(1.0), 1).divergent);
    EXPECT_FALSE(hormander_dyadic_norm(rational_symbol(1.0), 1).divergent);
    EXPECT_FALSE(divergence_flag({1, 10, 100}, {0, 0, 0}));
    EXPECT_TRUE(mihlin_sup_norm(power_symbol(1.0)).divergent);
    EXPECT_NEAR(mihlin_sup_norm(constant_symbol(1.0)).value, 1.0, 1e-12);
}

TEST(Hormander, FiniteDifferencesAreAccurate) {
    const Symbol cube = power_symbol(3.0);
    for (int k = 1; k <= 3; ++k) {
        const double exact = k == 1 ? 12.0 : k == 2 ? 12.0 : 6.0;  // derivatives of ν³ at ν = 2
        EXPECT_NEAR(fd_derivative(cube, 2.0, k, fd_step(2.0, k)).real(), exact, 1e-5 * exact);
    }
}

TEST(SubLaplacian, MatchesAnalyticEigenvalues) {
    for (int n = 0; n <= 6; ++n) {
        const SublapFit f = sublap_eigenvalue({0.2, -0.6, 0.9}, n, 1e-3);
        const double rho = norm(Vec3{0.2, -0.6, 0.9});
        EXPECT_LE(f.residual / std::abs(f.e), 1e-3);
        EXPECT_NEAR(f.e, oracle::sublaplacian_eigenvalue(rho, n), 1e-4 * f.e);
        const SublapFit g = sublap_eigenvalue({0.4, -1.2, 1.8}, n, 1e-3);
        EXPECT_NEAR(g.e / f.e, 2.0, 0.02);
    }
    EXPECT_THROW(sublap_eigenvalue({0, 0, 0}, 1), InputError);
    EXPECT_THROW(sublap_eigenvalue({1, 0, 0}, 1, 0.0), InputError);
}

TEST(SubLaplacian, SpectralMapIsLinearInRho) {
    const SpectralMap& m = oracle_map();
    EXPECT_EQ(m.n_max(), 160);
    EXPECT_NEAR(m(2.0, 3) / m(1.0, 3), 2.0, 1e-14);
    EXPECT_NEAR(m.kappa[160] / 1288.0, 1.0, 1e-3);
    EXPECT_THROW((void)m(1.0, 161), InputError);
}

TEST(Kernel, DecayFitAndTwoScaleCollapse) {
    const LPPartition part = lp_build(-12, 12);
    const KernelGrid K0 = dyadic_kernel(constant_symbol(1.0), 0, part, oracle_map(), calibrated_weight());
    const KernelGrid K1 = dyadic_kernel(constant_symbol(1.0), 1, part, oracle_map(), calibrated_weight());
    const KernelDecayReport rep = kernel_decay_report(K0, {11});
    EXPECT_GE(rep.decades, 2.0);
    ASSERT_EQ(rep.fits.size(), 1u);
    EXPECT_LE(rep.fits[0].violation_ratio, 1.0);
    EXPECT_LE(kernel_two_scale_collapse(K0, K1), 0.1);

    std::ostringstream os;
    write_kernel_csv(os, {K0});
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "norm,re,im,j");
}

TEST(Kernel, RequiresCalibratedWeight) {
    EXPECT_THROW(dyadic_kernel(constant_symbol(1.0), 0, lp_build(-12, 12), oracle_map(), PlancherelWeight{}),
                 StateError);
}

TEST(Multiplier, IdentitySymbolReproducesInverse) {
    const RadialFunction f = RadialFunction::gaussian(1.5, 0.7);
    const SpectralGrid G = make_grid(GridShape::inversion_shape());
    const MultiplierResult T = apply_multiplier(constant_symbol(1.0), f, G, calibrated_weight(), oracle_map(),
                                                standard_spec());
    const InverseSft inv(sft(f, G, standard_spec()), calibrated_weight());
    EXPECT_NEAR(multiplier_error(T, f), roundtrip_error(f, inv), 1e-12);
    EXPECT_EQ(T.symbol_sup, 1.0);
}

TEST(Multiplier, CommutesWithConvolution) {
    GridShape sh = GridShape::default_shape();
    sh.n_max = 4;
    const auto [r1, r2] = multiplier_algebra_residual(rational_symbol(1.0), exp_symbol(0.1),
                                                      RadialFunction::gaussian(1.0, 1.0),
                                                      RadialFunction::gaussian(1.5, 0.7), make_grid(sh), oracle_map(),
                                                      standard_spec());
    EXPECT_LE(r1, 5e-4);
    EXPECT_LE(r2, 5e-4);
}

TEST(Multiplier, Errors) {
    const RadialFunction f = RadialFunction::gaussian();
    const SpectralGrid G = make_grid(GridShape::default_shape());
    EXPECT_THROW(apply_multiplier(constant_symbol(1.0), f, G, PlancherelWeight{}, oracle_map(), standard_spec()),
                 StateError);
    const Symbol narrow = table_symbol({1, 2, 3, 4}, {1, 1, 1, 1});
    EXPECT_THROW(apply_symbol(narrow, sft(f, G, standard_spec()), oracle_map()), InputError);
}
