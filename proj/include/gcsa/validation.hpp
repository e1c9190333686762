#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gcsa/density.hpp"
#include "gcsa/estimators.hpp"
#include "gcsa/filters.hpp"
#include "gcsa/graph.hpp"
#include "gcsa/robust.hpp"

namespace gcsa {

/// Pre-registered Monte-Carlo gate widths. Means are tested against
/// mean_se_limit standard errors; variances against a ratio interval chosen
/// from chi-squared concentration of sample variances at T = 2000.
struct McGate {
  double mean_se_limit = 5.0;
  double var_ratio_lo = 0.7;
  double var_ratio_hi = 1.4;
  /// Fraction of frequencies that must pass the mean gate (1.0 = all).
  double mean_pass_fraction = 1.0;
};

struct McReport {
  std::string name;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<std::pair<std::string, double>> params;  // config echo

  Eigen::VectorXd empirical_mean;
  Eigen::VectorXd empirical_var;
  Eigen::VectorXd theoretical_mean;
  Eigen::VectorXd theoretical_var;
  double empirical_trace = 0.0;    // trace-style reports only
  double theoretical_trace = 0.0;
  double max_rel_deviation = 0.0;

  McGate gate;
  bool passed = false;
  std::vector<std::string> failures;
  double wall_seconds = 0.0;
};

std::string report_to_json(const McReport& report);
std::string report_to_text(const McReport& report);

/// Draws T independent R-realization pairs, forms cross-periodograms, and
/// checks the empirical mean against the population GCSD and the empirical
/// per-frequency variance against the closed form (|p_xy|^2 + p_x p_y) / R.
McReport mc_cross_periodogram_moments(const SpectralBasis& basis,
                                      const FilterKernel& k1,
                                      const FilterKernel& k2, int R,
                                      int trials, std::uint64_t seed,
                                      McGate gate = {});

/// Empirical mean of windowed-average estimates over single-realization
/// pairs against the (W~ o W~*) expectation closed form, elementwise within
/// gate.mean_se_limit standard errors.
McReport mc_windowed_bias(const SpectralBasis& basis, const WindowBank& bank,
                          const FilterKernel& k1, const FilterKernel& k2,
                          int trials, std::uint64_t seed, McGate gate = {});

/// Empirical trace of the sample covariance of windowed-average estimates
/// against the closed-form trace, within the variance ratio gate.
McReport mc_windowed_variance_trace(const SpectralBasis& basis,
                                    const WindowBank& bank,
                                    const FilterKernel& k1,
                                    const FilterKernel& k2, int trials,
                                    std::uint64_t seed, McGate gate = {});

/// Mean squared elementwise deviation (complex modulus).
double mse(const SpectralDensity& est, const SpectralDensity& truth);

enum class SharedEstimator { windowed_average, wft };

struct SharedComponentConfig {
  int i_shared = 0;
  int i_x = 0;
  int i_y = 0;
  double amp_shared = 5.0;
  double amp_private = 100.0;
  SharedEstimator estimator = SharedEstimator::windowed_average;
  int window_count = 100;     // windowed-average M
  double noise_scale = 0.1;
  int wft_filters = 50;       // WFT K
  std::uint64_t seed = 0;
};

struct SharedComponentReport {
  int gcsd_argmax = -1;   // index on the estimator's own grid
  int psd_x_argmax = -1;
  int psd_y_argmax = -1;
  int shared_index = -1;  // shared eigenvalue mapped onto that grid
  bool shared_detected = false;   // |GCSD| global max at the shared index
  bool psd_masks_shared = false;  // neither GPSD argmax at the shared index
  double gcsd_peak = 0.0;
};

/// Builds x = a_s v_shared + a_p v_ix and y = a_s v_shared + a_p v_iy, runs
/// GPSD on each and GCSD across, and reports whether the shared component
/// is visible only in the cross estimate.
SharedComponentReport shared_component_experiment(
    const SpectralBasis& basis, const SharedComponentConfig& config);

struct RScalingReport {
  std::vector<int> realization_counts;
  Eigen::MatrixXd mse_per_seed;  // seeds x |Rs|
  int strictly_decreasing = 0;
  int seeds = 0;
  double required_fraction = 0.95;
  bool passed = false;
};

/// Cross-periodogram MSE against the population GCSD for increasing R;
/// passes when MSE decreases strictly across the whole ladder in at least
/// required_fraction of seeds.
RScalingReport r_scaling_experiment(const SpectralBasis& basis,
                                    const FilterKernel& k1,
                                    const FilterKernel& k2,
                                    std::vector<int> realization_counts,
                                    int seeds, std::uint64_t seed,
                                    double required_fraction = 0.95);

struct RobustBreakdownConfig {
  bool cross = false;          // false: GPSD setup, true: GCSD setup
  int seeds = 20;
  int window_count = 100;
  double noise_scale = 0.1;
  HuberConfig huber;           // cutoff 0.25 by default
  std::uint64_t seed = 0;
};

struct RobustBreakdownReport {
  int seeds = 0;
  int clean_argmax = -1;        // argmax of the outlier-free estimate
  int robust_match = 0;         // robust argmax equals the clean argmax
  int nonrobust_differ = 0;     // plain argmax moved away from it
  double robust_match_min = 0.8;
  double nonrobust_differ_min = 0.5;
  bool passed = false;
};

/// Outlier stress test on the karate-club constructions: a v20-peaked
/// signal (or the v20-sharing pair) with one corrupted node value, repeated
/// over seeded window banks. Counts how often the Huber estimate keeps the
/// clean argmax while the plain windowed average loses it.
RobustBreakdownReport robust_breakdown_experiment(
    const SpectralBasis& karate_basis, const RobustBreakdownConfig& config);

}  // namespace gcsa
