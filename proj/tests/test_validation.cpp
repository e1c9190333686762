#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gcsa/experiments.hpp"
#include "gcsa/filters.hpp"
#include "gcsa/graph.hpp"
#include "gcsa/validation.hpp"

using namespace gcsa;

namespace {

SpectralBasis path_basis(int n) {
  return eigendecompose(laplacian(path_graph(n)));
}

}  // namespace

// ============================================================================
// MSE
// ============================================================================

TEST(Mse, ZeroForIdenticalDensities) {
  SpectralDensity d;
  d.frequencies = Eigen::VectorXd::LinSpaced(4, 0.0, 3.0);
  d.values = Eigen::VectorXcd::Ones(4);
  EXPECT_DOUBLE_EQ(mse(d, d), 0.0);
}

TEST(Mse, ConstantOffsetGivesDeltaSquared) {
  SpectralDensity truth, est;
  truth.frequencies = est.frequencies = Eigen::VectorXd::LinSpaced(5, 0.0, 4.0);
  truth.values = Eigen::VectorXcd::Ones(5);
  est.values = truth.values.array() + 0.3;
  EXPECT_NEAR(mse(est, truth), 0.09, 1e-15);
}

TEST(Mse, GridMismatchRejected) {
  SpectralDensity a, b;
  a.frequencies = Eigen::VectorXd::LinSpaced(3, 0.0, 2.0);
  a.values = Eigen::VectorXcd::Ones(3);
  b.frequencies = Eigen::VectorXd::LinSpaced(3, 0.0, 5.0);
  b.values = Eigen::VectorXcd::Ones(3);
  EXPECT_THROW(mse(a, b), std::invalid_argument);
}

// ============================================================================
// Monte-Carlo moment reports
// ============================================================================

TEST(McMoments, PassesOnSmallGraph) {
  const SpectralBasis basis = path_basis(8);
  const McReport report = mc_cross_periodogram_moments(
      basis, builtin_kernel(BuiltinKernel::mex),
      builtin_kernel(BuiltinKernel::heat), 1, 400, 77);
  EXPECT_TRUE(report.passed) << report_to_text(report);
  EXPECT_EQ(report.trials, 400);
}

TEST(McMoments, VarianceScalesWithR) {
  const SpectralBasis basis = path_basis(8);
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const McReport r1 = mc_cross_periodogram_moments(basis, heat, heat, 1,
                                                   600, 78);
  const McReport r4 = mc_cross_periodogram_moments(basis, heat, heat, 4,
                                                   600, 79);
  EXPECT_TRUE(r1.passed);
  EXPECT_TRUE(r4.passed);
  for (int i = 0; i < 8; ++i) {
    if (r1.theoretical_var(i) < 1e-18) continue;
    const double ratio = r4.empirical_var(i) / r1.empirical_var(i);
    EXPECT_GT(ratio, 0.25 * 0.5);
    EXPECT_LT(ratio, 0.25 * 2.0);
  }
}

TEST(McMoments, UnbiasednessWithinFourSeOnKarate) {
  // Tighter unit-level gate: 4 SE at >= 99% of frequencies.
  const SpectralBasis basis = eigendecompose(laplacian(karate_club()));
  McGate gate;
  gate.mean_se_limit = 4.0;
  gate.mean_pass_fraction = 0.99;
  const McReport report = mc_cross_periodogram_moments(
      basis, builtin_kernel(BuiltinKernel::mex),
      builtin_kernel(BuiltinKernel::heat), 1, 2000, 96, gate);
  EXPECT_TRUE(report.passed) << report_to_text(report);
}

TEST(McMoments, SeedDeterminism) {
  const SpectralBasis basis = path_basis(6);
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const McReport a =
      mc_cross_periodogram_moments(basis, heat, heat, 2, 150, 80);
  const McReport b =
      mc_cross_periodogram_moments(basis, heat, heat, 2, 150, 80);
  EXPECT_TRUE((a.empirical_mean.array() == b.empirical_mean.array()).all());
  EXPECT_TRUE((a.empirical_var.array() == b.empirical_var.array()).all());
}

TEST(McMoments, ReportSerializes) {
  const SpectralBasis basis = path_basis(5);
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const McReport report =
      mc_cross_periodogram_moments(basis, heat, heat, 1, 120, 81);
  const std::string json = report_to_json(report);
  EXPECT_NE(json.find("\"passed\""), std::string::npos);
  EXPECT_NE(json.find("\"empirical_var\""), std::string::npos);
  EXPECT_NE(json.find("cross-periodogram"), std::string::npos);
  const std::string text = report_to_text(report);
  EXPECT_TRUE(text.rfind("[PASS]", 0) == 0 || text.rfind("[FAIL]", 0) == 0);
}

// ============================================================================
// Windowed bias / variance reports
// ============================================================================

TEST(McWindowedBias, IdentityBankReducesToUnbiasedness) {
  const SpectralBasis basis = path_basis(8);
  const WindowBank bank = all_ones_bank(8, 2);
  const McReport report = mc_windowed_bias(
      basis, bank, builtin_kernel(BuiltinKernel::heat),
      builtin_kernel(BuiltinKernel::high), 600, 82);
  EXPECT_TRUE(report.passed) << report_to_text(report);
  // The oracle itself equals the population GCSD for identity windows.
  const SpectralDensity truth =
      true_gcsd(basis, builtin_kernel(BuiltinKernel::heat),
                builtin_kernel(BuiltinKernel::high));
  EXPECT_LT(
      (report.theoretical_mean - truth.values.real()).cwiseAbs().maxCoeff(),
      1e-10);
}

TEST(McWindowedBias, RandomBankPasses) {
  const SpectralBasis basis = path_basis(10);
  const WindowBank bank = random_window_bank(basis, 10, 0.1, 83);
  const McReport report = mc_windowed_bias(
      basis, bank, builtin_kernel(BuiltinKernel::mex),
      builtin_kernel(BuiltinKernel::heat), 800, 84);
  EXPECT_TRUE(report.passed) << report_to_text(report);
}

TEST(McWindowedBias, AdversarialNoiseBankStillMatchesOracle) {
  // The expectation formula holds regardless of window quality.
  const SpectralBasis basis = path_basis(6);
  const WindowBank bank = random_window_bank(basis, 5, 2.0, 85);
  const McReport report = mc_windowed_bias(
      basis, bank, builtin_kernel(BuiltinKernel::heat),
      builtin_kernel(BuiltinKernel::heat), 800, 86);
  EXPECT_TRUE(report.passed) << report_to_text(report);
}

TEST(McWindowedVarianceTrace, IdentityWindowCollapse) {
  const SpectralBasis basis = path_basis(6);
  const McReport report = mc_windowed_variance_trace(
      basis, all_ones_bank(6, 1), builtin_kernel(BuiltinKernel::heat),
      builtin_kernel(BuiltinKernel::high), 2000, 87);
  EXPECT_TRUE(report.passed) << report_to_text(report);
}

TEST(McWindowedVarianceTrace, RandomBankPasses) {
  const SpectralBasis basis = path_basis(6);
  const WindowBank bank = random_window_bank(basis, 2, 0.1, 88);
  const McReport report = mc_windowed_variance_trace(
      basis, bank, builtin_kernel(BuiltinKernel::heat),
      builtin_kernel(BuiltinKernel::high), 2000, 89);
  EXPECT_TRUE(report.passed) << report_to_text(report);
}

// ============================================================================
// Shared-component experiment
// ============================================================================

TEST(SharedComponent, WindowedAverageDetectsSharedFrequency) {
  const SpectralBasis basis = eigendecompose(laplacian(sensor_graph(60, 5, 90)));
  SharedComponentConfig config;
  config.i_shared = 45;
  config.i_x = 15;
  config.i_y = 30;
  config.estimator = SharedEstimator::windowed_average;
  config.window_count = 40;
  config.seed = 91;
  const SharedComponentReport report =
      shared_component_experiment(basis, config);
  EXPECT_TRUE(report.shared_detected);
  EXPECT_TRUE(report.psd_masks_shared);
  EXPECT_EQ(report.psd_x_argmax, config.i_x);
  EXPECT_EQ(report.psd_y_argmax, config.i_y);
}

TEST(SharedComponent, WftDetectsNearestGridPoint) {
  const SpectralBasis basis = eigendecompose(laplacian(sensor_graph(60, 5, 7)));
  SharedComponentConfig config;
  config.i_shared = 45;
  config.i_x = 15;
  config.i_y = 30;
  config.estimator = SharedEstimator::wft;
  config.wft_filters = 30;
  const SharedComponentReport report =
      shared_component_experiment(basis, config);
  EXPECT_TRUE(report.shared_detected);
  EXPECT_TRUE(report.psd_masks_shared);
}

TEST(SharedComponent, WftPeakAlwaysWithinOneGridCell) {
  // The WFT grid argmax can shift one cell when the shared eigenvalue falls
  // near a midpoint (the Frobenius normalization tilts the ratio), but it
  // never strays farther.
  for (std::uint64_t gs : {90u, 92u, 1u, 2u, 3u}) {
    const SpectralBasis basis =
        eigendecompose(laplacian(sensor_graph(60, 5, gs)));
    SharedComponentConfig config;
    config.i_shared = 45;
    config.i_x = 15;
    config.i_y = 30;
    config.estimator = SharedEstimator::wft;
    config.wft_filters = 30;
    const SharedComponentReport report =
        shared_component_experiment(basis, config);
    EXPECT_LE(std::abs(report.gcsd_argmax - report.shared_index), 1)
        << "graph seed " << gs;
    EXPECT_TRUE(report.psd_masks_shared);
  }
}

TEST(SharedComponent, NoSharedAmplitudeNoPeak) {
  const SpectralBasis basis = eigendecompose(laplacian(sensor_graph(60, 5, 93)));
  SharedComponentConfig config;
  config.i_shared = 45;
  config.i_x = 15;
  config.i_y = 30;
  config.amp_shared = 0.0;
  config.estimator = SharedEstimator::windowed_average;
  config.window_count = 40;
  config.seed = 94;
  const SharedComponentReport report =
      shared_component_experiment(basis, config);
  // GCSD at the shared index sits in the leakage noise floor, far below the
  // private-component energy.
  EXPECT_FALSE(report.shared_detected);
}

TEST(SharedComponent, IndexCollisionRejected) {
  const SpectralBasis basis = path_basis(6);
  SharedComponentConfig config;
  config.i_shared = 2;
  config.i_x = 2;
  config.i_y = 4;
  EXPECT_THROW(shared_component_experiment(basis, config),
               std::invalid_argument);
}

// ============================================================================
// R-scaling
// ============================================================================

TEST(RScaling, MseDecreasesAcrossLadder) {
  const SpectralBasis basis = eigendecompose(laplacian(karate_club()));
  const RScalingReport report = r_scaling_experiment(
      basis, builtin_kernel(BuiltinKernel::mex),
      builtin_kernel(BuiltinKernel::heat), {1, 10, 100}, 10, 95, 0.9);
  EXPECT_TRUE(report.passed);
  EXPECT_GE(report.strictly_decreasing, 9);
}
