#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gcsa/density.hpp"
#include "gcsa/filters.hpp"
#include "gcsa/graph.hpp"
#include "gcsa/processes.hpp"

namespace gcsa {

/// Bank of M data windows, each satisfying ||w||^2 = N.
struct WindowBank {
  std::vector<Eigen::VectorXd> windows;

  int size() const { return static_cast<int>(windows.size()); }
  int n() const { return windows.empty() ? 0 : static_cast<int>(windows[0].size()); }
};

/// Validates the norm constraint ||w_m||^2 = N on every window.
WindowBank make_window_bank(std::vector<Eigen::VectorXd> windows);

WindowBank all_ones_bank(int n, int count);

/// Random windows close to the identity: draw W~_m = I + noise_scale * E
/// with i.i.d. standard normal E, set w_m = diag(V W~_m V^T), rescale to
/// ||w_m||^2 = N. Deterministic given (seed, m); degenerate draws are
/// resampled, with an error after 100 attempts.
WindowBank random_window_bank(const SpectralBasis& basis, int count,
                              double noise_scale, std::uint64_t seed);

/// Frequency-domain dual of the windowing operator: W~ = V^T diag(w) V.
Eigen::MatrixXd window_dual(const SpectralBasis& basis,
                            const Eigen::VectorXd& w);

enum class PeriodogramForm { periodogram, correlogram, least_squares };

/// Graph cross-periodogram over R realization pairs. The three forms are
/// algebraically identical:
///   periodogram   : (1/R) sum_r (V^T x_r) o (V^T y_r)*
///   correlogram   : diag(V^T Sigma^_XY V)
///   least_squares : (G^T G)^{-1} G^T vec(Sigma^_XY),
///                   G = (vec(v_1 v_1^T) | ... | vec(v_N v_N^T))
/// With ey == ex this reduces to the graph periodogram and is tagged psd.
/// The least-squares path verifies G^T G = I and applies G^T directly;
/// pass general_least_squares to solve the full normal equations instead.
SpectralDensity cross_periodogram(
    const SpectralBasis& basis, const SignalEnsemble& ex,
    const SignalEnsemble& ey,
    PeriodogramForm form = PeriodogramForm::periodogram,
    bool general_least_squares = false);

/// Univariate graph periodogram: the self case of cross_periodogram, sharing
/// its code path bit for bit.
SpectralDensity periodogram(const SpectralBasis& basis,
                            const SignalEnsemble& ex,
                            PeriodogramForm form = PeriodogramForm::periodogram);

/// Single-window estimate (V^T (w o x)) o (V^T (w o y))*. Requires
/// ||w||^2 = N.
SpectralDensity windowed_cross_periodogram(const SpectralBasis& basis,
                                           const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y,
                                           const Eigen::VectorXd& w);

/// Mean of the single-window estimates over the bank.
SpectralDensity windowed_average_cross_periodogram(const SpectralBasis& basis,
                                                   const Eigen::VectorXd& x,
                                                   const Eigen::VectorXd& y,
                                                   const WindowBank& bank);

/// Closed-form expectation of the windowed-average estimator:
/// (1/M) sum_m (W~_m o W~_m*) p_true. This is the bias oracle.
SpectralDensity windowed_expectation(const SpectralBasis& basis,
                                     const WindowBank& bank,
                                     const SpectralDensity& p_true);

struct WftDesign {
  double tau = 0.0;     // lambda_max / K
  double sigma2 = 0.0;  // (K + 1) lambda_max / K^2
};

WftDesign wft_design(double lambda_max, int K);

/// Windowed-graph-Fourier estimator on the grid {k tau, k = 1..K} with
/// shifted Gaussian kernels g_k(lambda) = exp(-(lambda - k tau)^2 / sigma2):
/// value(k) = <g_k(S) x, g_k(S) y> / ||g_k(S)||_F^2, evaluated by exact
/// spectral filtering. With y == x this is the windowed-Fourier periodogram.
/// The default grid starts at k = 1 (lambda = 0 is not sampled);
/// include_zero prepends the k = 0 point.
SpectralDensity wft_estimator(const SpectralBasis& basis,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y, int K,
                              bool include_zero = false);

/// Matrix-free variant for graphs too large to eigendecompose: filters are
/// applied with Chebyshev polynomials of the given order and the Frobenius
/// normalization is estimated with a seeded Hutchinson trace estimate over
/// `probes` Rademacher vectors. Accuracy is limited by both approximations.
SpectralDensity wft_estimator_chebyshev(const ShiftOperator& s, double lambda_max,
                                        const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y, int K,
                                        int order = kDefaultChebyshevOrder,
                                        int probes = 16,
                                        std::uint64_t seed = 0);

/// Elementwise |p_xy|^2 / (max(p_x, floor) max(p_y, floor)). Estimated
/// inputs can push the ratio above 1; such entries are clipped to 1 and
/// flagged in the result. Population inputs stay in [0, 1].
SpectralDensity coherence(const SpectralDensity& p_x, const SpectralDensity& p_y,
                          const SpectralDensity& p_xy, double floor);

/// 1e-12 * max p_x: guards coherence against numerically dead frequencies.
double default_coherence_floor(const SpectralDensity& p_x);

/// Closed-form per-frequency variance of the cross-periodogram:
/// (|p_xy|^2 + p_x o p_y) / R for Gaussian inputs.
Eigen::VectorXd theoretical_variance(const SpectralDensity& p_x,
                                     const SpectralDensity& p_y,
                                     const SpectralDensity& p_xy, int R);

/// Closed-form tr(Var(p^W_XY)) of the windowed-average estimator:
/// (1/M^2) sum_{m,m'} ( ||W~_{m,m'} p_xy||^2 + <W~_{m,m'} p_x, W~_{m,m'} p_y> )
/// with W~_{m,m'} = W~_m o W~_{m'}*.
double windowed_variance_trace(const SpectralBasis& basis,
                               const WindowBank& bank,
                               const SpectralDensity& p_x,
                               const SpectralDensity& p_y,
                               const SpectralDensity& p_xy);

/// The p_xy contribution of one (m, m') pair in the trace above; vanishes
/// exactly when the window supports are farther apart than the summed
/// filter degrees.
double window_pair_csd_term(const SpectralBasis& basis,
                            const Eigen::VectorXd& w_m,
                            const Eigen::VectorXd& w_mp,
                            const SpectralDensity& p_xy);

}  // namespace gcsa
