#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "gcsa/density.hpp"
#include "gcsa/filters.hpp"
#include "gcsa/graph.hpp"

namespace gcsa {

/// R realizations of an N-dimensional real signal, one realization per row.
/// The generating seed is recorded for provenance.
struct SignalEnsemble {
  Eigen::MatrixXd data;  // R x N
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(data.cols()); }
  int realizations() const { return static_cast<int>(data.rows()); }
  Eigen::VectorXd realization(int r) const { return data.row(r).transpose(); }
};

/// i.i.d. standard normal entries; realization r is drawn from substream r
/// of `seed`, so any prefix of realizations is stable under changes of R.
SignalEnsemble generate_white(int n, int R, std::uint64_t seed);

struct JwsPair {
  SignalEnsemble x;
  SignalEnsemble y;
};

/// Jointly weakly stationary pair by construction: X = H1 eps1, Y = H2 eps2
/// through exact spectral filters. With rho = 1 (default) the two inputs are
/// the same white ensemble; with rho in [0, 1), eps2 = rho eps1 +
/// sqrt(1 - rho^2) eps', which keeps V^T Cov(eps1, eps2) V = rho I diagonal
/// and enables pairs with coherence rho^2.
JwsPair generate_jws_pair(const SpectralBasis& basis, const FilterKernel& k1,
                          const FilterKernel& k2, int R, std::uint64_t seed,
                          double rho = 1.0);

Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& x);
Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXd& xt);

enum class CovarianceKind { autocovariance, cross };

struct CrossCovariance {
  Eigen::MatrixXd matrix;
  CovarianceKind kind = CovarianceKind::cross;
};

/// (1/R) sum_r x_r y_r^T. With ey == ex this is the sample covariance and
/// the result is tagged autocovariance.
CrossCovariance sample_cross_covariance(const SignalEnsemble& ex,
                                        const SignalEnsemble& ey);

/// || diag(V^T Sigma V) ||_2 / || V^T Sigma V ||_F, in [0, 1]; equals 1 iff
/// V^T Sigma V is diagonal. Throws on a zero matrix.
double stationarity_measure(const SpectralBasis& basis,
                            const CrossCovariance& c);

/// Population GCSD of the constructed pair: rho * h1(lambda) * h2(lambda)
/// per graph frequency. With k1 == k2 and rho = 1 this is the true GPSD.
SpectralDensity true_gcsd(const SpectralBasis& basis, const FilterKernel& k1,
                          const FilterKernel& k2, double rho = 1.0);
SpectralDensity true_gpsd(const SpectralBasis& basis, const FilterKernel& k);

/// CSV format: header `# n=<N> R=<R> seed=<seed>`, then one realization per
/// row with N comma-separated columns.
std::string ensemble_to_csv(const SignalEnsemble& e);
SignalEnsemble ensemble_from_csv(const std::string& csv_text);

}  // namespace gcsa
