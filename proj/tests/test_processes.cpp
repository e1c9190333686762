#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gcsa/estimators.hpp"
#include "gcsa/experiments.hpp"
#include "gcsa/filters.hpp"
#include "gcsa/processes.hpp"
#include "gcsa/random.hpp"

using namespace gcsa;

namespace {

SpectralBasis karate_basis() {
  static const SpectralBasis basis = eigendecompose(laplacian(karate_club()));
  return basis;
}

}  // namespace

// ============================================================================
// White ensembles
// ============================================================================

TEST(GenerateWhite, DeterministicForSeed) {
  const SignalEnsemble a = generate_white(3, 1, 42);
  const SignalEnsemble b = generate_white(3, 1, 42);
  EXPECT_TRUE((a.data.array() == b.data.array()).all());
  EXPECT_EQ(a.seed, 42u);
}

TEST(GenerateWhite, PrefixStableUnderLargerR) {
  // Per-realization substreams: row r does not depend on R.
  const SignalEnsemble small = generate_white(6, 3, 9);
  const SignalEnsemble large = generate_white(6, 10, 9);
  EXPECT_TRUE(
      (small.data.array() == large.data.topRows(3).array()).all());
}

TEST(GenerateWhite, SampleCovarianceNearIdentity) {
  // Monte-Carlo check; 0.1 tolerance comes from sqrt(2/R) concentration at
  // R = 10000 with a wide safety factor.
  const SignalEnsemble e = generate_white(50, 10000, 123);
  const Eigen::MatrixXd cov = sample_cross_covariance(e, e).matrix;
  EXPECT_LT((cov - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff(),
            0.1);
}

TEST(GenerateWhite, RejectsEmpty) {
  EXPECT_THROW(generate_white(3, 0, 1), std::invalid_argument);
  EXPECT_THROW(generate_white(0, 3, 1), std::invalid_argument);
}

// ============================================================================
// Jointly stationary pairs
// ============================================================================

TEST(JwsPair, IdentityKernelsReproduceSharedInput) {
  const SpectralBasis basis = eigendecompose(laplacian(path_graph(5)));
  const JwsPair pair =
      generate_jws_pair(basis, identity_kernel(), identity_kernel(), 4, 77);
  // Both outputs are the same filtered input, and the identity filter is
  // V V^T, so rows reproduce the documented substream draws.
  EXPECT_TRUE((pair.x.data.array() == pair.y.data.array()).all());
  for (int r = 0; r < 4; ++r) {
    GaussianStream stream(77, 2 * static_cast<std::uint64_t>(r));
    const Eigen::VectorXd eps = stream.normal_vector(5);
    EXPECT_LT((pair.x.realization(r) - eps).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(JwsPair, ZeroKernelGivesZeroProcess) {
  const SpectralBasis basis = karate_basis();
  const JwsPair pair = generate_jws_pair(
      basis, builtin_kernel(BuiltinKernel::heat), zero_kernel(), 3, 5);
  EXPECT_EQ(pair.y.data.norm(), 0.0);
  EXPECT_GT(pair.x.data.norm(), 0.0);
}

TEST(JwsPair, SampleGcsdConvergesToKernelProduct) {
  // Large-R sample GCSD tracks h_mex o h_heat elementwise.
  const SpectralBasis basis = karate_basis();
  const FilterKernel mex = builtin_kernel(BuiltinKernel::mex);
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const int R = 20000;
  const JwsPair pair = generate_jws_pair(basis, mex, heat, R, 31);
  const SpectralDensity est = cross_periodogram(basis, pair.x, pair.y);
  const SpectralDensity truth = true_gcsd(basis, mex, heat);
  const Eigen::VectorXd sd =
      theoretical_variance(true_gpsd(basis, mex), true_gpsd(basis, heat),
                           truth, R)
          .cwiseSqrt();
  for (int i = 0; i < basis.size(); ++i)
    EXPECT_LE(std::abs(est.values(i).real() - truth.values(i).real()),
              std::max(6.0 * sd(i), 1e-12))
        << "frequency " << i;
}

TEST(JwsPair, RhoValidated) {
  const SpectralBasis basis = karate_basis();
  EXPECT_THROW(generate_jws_pair(basis, identity_kernel(), identity_kernel(),
                                 1, 0, 1.5),
               std::invalid_argument);
}

// ============================================================================
// GFT
// ============================================================================

TEST(Gft, EigenvectorMapsToBasisVector) {
  const SpectralBasis basis = karate_basis();
  const Eigen::VectorXd xt = gft(basis, basis.eigenvectors.col(7));
  for (int i = 0; i < 34; ++i)
    EXPECT_NEAR(xt(i), i == 7 ? 1.0 : 0.0, 1e-12);
}

TEST(Gft, ZeroMapsToZero) {
  EXPECT_EQ(gft(karate_basis(), Eigen::VectorXd::Zero(34)).norm(), 0.0);
}

TEST(Gft, MatchesDenseOracleAndInverts) {
  const SpectralBasis basis = eigendecompose(laplacian(path_graph(3)));
  GaussianStream g(3, 0);
  const Eigen::VectorXd x = g.normal_vector(3);
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(3);
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      expected(l) += basis.eigenvectors(i, l) * x(i);
  const Eigen::VectorXd xt = gft(basis, x);
  EXPECT_LT((xt - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((igft(basis, xt) - x).cwiseAbs().maxCoeff(), 1e-10);
}

// ============================================================================
// Sample cross-covariance
// ============================================================================

TEST(SampleCrossCovariance, SingleRealizationOuterProduct) {
  SignalEnsemble e;
  e.data.resize(1, 2);
  e.data << 3.0, -1.0;
  const CrossCovariance c = sample_cross_covariance(e, e);
  Eigen::MatrixXd expected(2, 2);
  expected << 9.0, -3.0, -3.0, 1.0;
  EXPECT_TRUE(c.matrix.isApprox(expected));
  EXPECT_EQ(c.kind, CovarianceKind::autocovariance);
}

TEST(SampleCrossCovariance, ZeroPartnerGivesZero) {
  SignalEnsemble ex = generate_white(4, 3, 1);
  SignalEnsemble ey;
  ey.data = Eigen::MatrixXd::Zero(3, 4);
  EXPECT_EQ(sample_cross_covariance(ex, ey).matrix.norm(), 0.0);
}

TEST(SampleCrossCovariance, TwoRealizationOracle) {
  // Average of two outer products, accumulated with explicit loops.
  SignalEnsemble ex, ey;
  ex.data.resize(2, 2);
  ex.data << 1.0, 2.0, -1.0, 0.5;
  ey.data.resize(2, 2);
  ey.data << 0.5, -2.0, 3.0, 1.0;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        expected(i, j) += ex.data(r, i) * ey.data(r, j) / 2.0;
  const CrossCovariance c = sample_cross_covariance(ex, ey);
  EXPECT_TRUE(c.matrix.isApprox(expected));
  EXPECT_EQ(c.kind, CovarianceKind::cross);
}

TEST(SampleCrossCovariance, ShapeMismatchRejected) {
  const SignalEnsemble a = generate_white(4, 3, 1);
  const SignalEnsemble b = generate_white(4, 2, 1);
  EXPECT_THROW(sample_cross_covariance(a, b), std::invalid_argument);
}

TEST(SampleCrossCovariance, AutoCovarianceIsPsd) {
  const SignalEnsemble e = generate_white(6, 40, 8);
  const CrossCovariance c = sample_cross_covariance(e, e);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c.matrix);
  EXPECT_GT(solver.eigenvalues().minCoeff(), -1e-8);
}

// ============================================================================
// Stationarity measure
// ============================================================================

TEST(StationarityMeasure, ExactlyDiagonalizableGivesOne) {
  const SpectralBasis basis = eigendecompose(laplacian(path_graph(6)));
  GaussianStream g(2, 0);
  const Eigen::VectorXd d = g.normal_vector(6);
  CrossCovariance c{basis.eigenvectors * d.asDiagonal() *
                        basis.eigenvectors.transpose(),
                    CovarianceKind::cross};
  EXPECT_NEAR(stationarity_measure(basis, c), 1.0, 1e-10);
}

TEST(StationarityMeasure, IdentityGivesOne) {
  const SpectralBasis basis = karate_basis();
  CrossCovariance c{Eigen::MatrixXd::Identity(34, 34),
                    CovarianceKind::autocovariance};
  EXPECT_NEAR(stationarity_measure(basis, c), 1.0, 1e-12);
}

TEST(StationarityMeasure, ZeroDiagonalGivesZero) {
  const SpectralBasis basis = eigendecompose(laplacian(path_graph(4)));
  // Spectral-domain matrix with empty diagonal and nonzero off-diagonal.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  m(0, 1) = m(1, 0) = 1.0;
  CrossCovariance c{basis.eigenvectors * m * basis.eigenvectors.transpose(),
                    CovarianceKind::cross};
  EXPECT_NEAR(stationarity_measure(basis, c), 0.0, 1e-12);
}

TEST(StationarityMeasure, ZeroMatrixRejected) {
  CrossCovariance c{Eigen::MatrixXd::Zero(34, 34), CovarianceKind::cross};
  EXPECT_THROW(stationarity_measure(karate_basis(), c), std::invalid_argument);
}

TEST(StationarityMeasure, JointStationarityByConstruction) {
  // Off-diagonal mass of V^T Sigma^_XY V decays as 1/sqrt(R).
  const SpectralBasis basis = eigendecompose(laplacian(path_graph(12)));
  const FilterKernel mex = builtin_kernel(BuiltinKernel::mex);
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const JwsPair pair = generate_jws_pair(basis, mex, heat, 20000, 4);
  const double level = stationarity_measure(
      basis, sample_cross_covariance(pair.x, pair.y));
  EXPECT_GT(level, 0.97);
}

TEST(StationarityMeasure, GftDecorrelation) {
  // GFT processes are uncorrelated: the spectral cross-covariance is
  // diagonal-dominant with off-diagonal O(1/sqrt(R)).
  const SpectralBasis basis = eigendecompose(laplacian(path_graph(10)));
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const JwsPair pair = generate_jws_pair(basis, heat, heat, 20000, 6);
  SignalEnsemble gx, gy;
  gx.data = pair.x.data * basis.eigenvectors;  // row-wise GFT
  gy.data = pair.y.data * basis.eigenvectors;
  const Eigen::MatrixXd c = sample_cross_covariance(gx, gy).matrix;
  double off = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      if (i != j) off = std::max(off, std::abs(c(i, j)));
  EXPECT_LT(off, 0.1 * c.diagonal().cwiseAbs().maxCoeff());
}

TEST(CrossCovariance, PopulationHopLocality) {
  // Degree d1/d2 polynomial filters over a shared white input: the
  // population cross-covariance H1 H2^T vanishes past d1 + d2 hops.
  const Graph g = path_graph(14);
  const ShiftOperator l = laplacian(g);
  const double bound = gershgorin_bound(l);
  const int d1 = 2, d2 = 3;
  const ChebyshevFilter f1 =
      chebyshev_fit(builtin_kernel(BuiltinKernel::heat), d1, bound).filter;
  const ChebyshevFilter f2 =
      chebyshev_fit(builtin_kernel(BuiltinKernel::high), d2, bound).filter;

  Eigen::MatrixXd h1(14, 14), h2(14, 14);
  for (int j = 0; j < 14; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(14);
    e(j) = 1.0;
    h1.col(j) = chebyshev_apply(l, f1, e);
    h2.col(j) = chebyshev_apply(l, f2, e);
  }
  const Eigen::MatrixXd sigma_xy = h1 * h2.transpose();
  bool some_nonzero_inside = false;
  for (int i = 0; i < 14; ++i) {
    for (int j = 0; j < 14; ++j) {
      if (hop_distance(g, i, j) > d1 + d2)
        EXPECT_LE(std::abs(sigma_xy(i, j)), 1e-12);
      else if (std::abs(sigma_xy(i, j)) > 1e-6)
        some_nonzero_inside = true;
    }
  }
  EXPECT_TRUE(some_nonzero_inside);
}

// ============================================================================
// Population densities
// ============================================================================

TEST(TrueGcsd, SelfIsSquaredResponse) {
  const SpectralBasis basis = karate_basis();
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const SpectralDensity p = true_gpsd(basis, heat);
  const Eigen::VectorXd h = kernel_values(heat, basis);
  EXPECT_EQ(p.kind, DensityKind::psd);
  for (int i = 0; i < 34; ++i) {
    EXPECT_GE(p.values(i).real(), 0.0);
    EXPECT_NEAR(p.values(i).real(), h(i) * h(i), 1e-14);
  }
}

TEST(TrueGcsd, KernelProduct) {
  const SpectralBasis basis = karate_basis();
  const FilterKernel mex = builtin_kernel(BuiltinKernel::mex);
  const FilterKernel heat = builtin_kernel(BuiltinKernel::heat);
  const SpectralDensity p = true_gcsd(basis, mex, heat);
  const Eigen::VectorXd h1 = kernel_values(mex, basis);
  const Eigen::VectorXd h2 = kernel_values(heat, basis);
  for (int i = 0; i < 34; ++i)
    EXPECT_NEAR(p.values(i).real(), h1(i) * h2(i), 1e-14);
}

TEST(TrueGcsd, ZeroKernelGivesZeroDensity) {
  const SpectralDensity p =
      true_gcsd(karate_basis(), builtin_kernel(BuiltinKernel::mex),
                zero_kernel());
  EXPECT_EQ(p.values.norm(), 0.0);
}

// ============================================================================
// Ensemble CSV
// ============================================================================

TEST(EnsembleCsv, RoundTripBitExact) {
  const SignalEnsemble e = generate_white(5, 3, 99);
  const SignalEnsemble back = ensemble_from_csv(ensemble_to_csv(e));
  EXPECT_EQ(back.seed, 99u);
  EXPECT_TRUE((back.data.array() == e.data.array()).all());
}

TEST(EnsembleCsv, HeaderMismatchRejected) {
  EXPECT_THROW(ensemble_from_csv("# n=3 R=2 seed=0\n1.0,2.0,3.0\n"),
               std::invalid_argument);
}
