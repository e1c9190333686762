#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gcsa/density.hpp"
#include "gcsa/estimators.hpp"
#include "gcsa/graph.hpp"

namespace gcsa {

/// Parameters of the Huber M-type fit.
struct HuberConfig {
  double cutoff = 0.25;       // c
  int max_iter = 200;
  double tol = 1e-8;          // relative change of the estimate
  double weight_floor = 1e-8; // keeps the reweighted system nonsingular
};

/// rho_c(t) = t^2 for |t| <= c, 2c(|t| - c/2) otherwise. Continuous with
/// continuous derivative at |t| = c.
double huber_loss(double t, double c);

struct RobustResult {
  SpectralDensity estimate;
  bool converged = false;
  int iterations = 0;
  /// Huber objective after the initial point and after each iteration;
  /// non-increasing for the IRLS scheme used here.
  std::vector<double> objective_history;
};

/// Minimizes sum_i rho_c((vec(Sigma^) - G p)_i) over p by iteratively
/// reweighted least squares with weights w_i = min(1, c / |r_i|), floored
/// at weight_floor. G = (vec(v_1 v_1^T) | ... | vec(v_N v_N^T)) comes from
/// the basis. Non-convergence after max_iter is reported, not thrown.
RobustResult irls_solve(const SpectralBasis& basis,
                        const Eigen::MatrixXd& sigma_hat,
                        const HuberConfig& config,
                        const Eigen::VectorXd& init);

/// Complex residual branch: the loss applies to real and imaginary parts
/// separately, so the fit decouples into two real solves. With a real
/// symmetric shift operator this path is only reachable synthetically.
RobustResult irls_solve_complex(const SpectralBasis& basis,
                                const Eigen::MatrixXcd& sigma_hat,
                                const HuberConfig& config,
                                const Eigen::VectorXcd& init);

/// (1/M) sum_m (w_m o x)(w_m o x)^T.
Eigen::MatrixXd windowed_sample_covariance(const Eigen::VectorXd& x,
                                           const WindowBank& bank);
Eigen::MatrixXd windowed_sample_cross_covariance(const Eigen::VectorXd& x,
                                                 const Eigen::VectorXd& y,
                                                 const WindowBank& bank);

/// M-type GPSD estimate. Without a bank, fits the plain sample covariance
/// x x^T (or the ensemble sample covariance); with a bank, fits the
/// windowed-average sample covariance. Initialization is the non-robust
/// estimate. Note the estimate is a Huber fit, not a quadratic form, so
/// entries may take small negative values; no projection is applied.
RobustResult m_type_psd(const SpectralBasis& basis, const Eigen::VectorXd& x,
                        const WindowBank* bank, const HuberConfig& config);
RobustResult m_type_psd(const SpectralBasis& basis, const SignalEnsemble& ex,
                        const HuberConfig& config);

/// M-type GCSD estimate across two signals; y == x reduces to m_type_psd.
RobustResult m_type_csd(const SpectralBasis& basis, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y, const WindowBank* bank,
                        const HuberConfig& config);

/// Copy of x with one entry replaced.
Eigen::VectorXd inject_outlier(const Eigen::VectorXd& x, int node, double value);

}  // namespace gcsa
