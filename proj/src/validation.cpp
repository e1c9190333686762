#include "gcsa/validation.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gcsa/processes.hpp"
#include "gcsa/random.hpp"

namespace gcsa {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Streaming per-frequency mean and variance in fixed trial order.
class MomentAccumulator {
 public:
  explicit MomentAccumulator(int n)
      : count_(0), mean_(Eigen::VectorXd::Zero(n)),
        m2_(Eigen::VectorXd::Zero(n)) {}

  void add(const Eigen::VectorXd& sample) {
    ++count_;
    const Eigen::VectorXd delta = sample - mean_;
    mean_ += delta / count_;
    m2_ += (delta.array() * (sample - mean_).array()).matrix();
  }

  int count() const { return count_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  Eigen::VectorXd variance() const {
    if (count_ < 2) throw std::logic_error("variance needs >= 2 samples");
    return m2_ / (count_ - 1);
  }

 private:
  int count_;
  Eigen::VectorXd mean_;
  Eigen::VectorXd m2_;
};

constexpr double kZeroVarianceEps = 1e-20;
constexpr double kZeroMeanEps = 1e-12;

}  // namespace

std::string report_to_json(const McReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  for (const auto& [key, value] : report.params) j["params"][key] = value;
  auto vec = [](const Eigen::VectorXd& v) {
    auto arr = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
  };
  j["empirical_mean"] = vec(report.empirical_mean);
  j["empirical_var"] = vec(report.empirical_var);
  j["theoretical_mean"] = vec(report.theoretical_mean);
  j["theoretical_var"] = vec(report.theoretical_var);
  j["empirical_trace"] = report.empirical_trace;
  j["theoretical_trace"] = report.theoretical_trace;
  j["max_rel_deviation"] = report.max_rel_deviation;
  j["gate"] = {{"mean_se_limit", report.gate.mean_se_limit},
               {"var_ratio_lo", report.gate.var_ratio_lo},
               {"var_ratio_hi", report.gate.var_ratio_hi},
               {"mean_pass_fraction", report.gate.mean_pass_fraction}};
  j["passed"] = report.passed;
  j["failures"] = report.failures;
  j["wall_seconds"] = report.wall_seconds;
  return j.dump(2);
}

std::string report_to_text(const McReport& report) {
  std::ostringstream out;
  out << (report.passed ? "[PASS] " : "[FAIL] ") << report.name
      << " (trials=" << report.trials << ", seed=" << report.seed;
  for (const auto& [key, value] : report.params)
    out << ", " << key << "=" << value;
  out << ", max_rel_dev=" << report.max_rel_deviation << ", "
      << report.wall_seconds << "s)";
  for (const auto& f : report.failures) out << "\n       - " << f;
  return out.str();
}

McReport mc_cross_periodogram_moments(const SpectralBasis& basis,
                                      const FilterKernel& k1,
                                      const FilterKernel& k2, int R,
                                      int trials, std::uint64_t seed,
                                      McGate gate) {
  if (trials < 100) throw std::invalid_argument("need at least 100 trials");
  const auto start = Clock::now();
  const int n = basis.size();

  const SpectralDensity truth = true_gcsd(basis, k1, k2);
  const SpectralDensity p_x = true_gpsd(basis, k1);
  const SpectralDensity p_y = true_gpsd(basis, k2);
  const Eigen::VectorXd theo_var = theoretical_variance(p_x, p_y, truth, R);

  MomentAccumulator acc(n);
  for (int t = 0; t < trials; ++t) {
    const JwsPair pair =
        generate_jws_pair(basis, k1, k2, R, mix_seed(seed, t));
    acc.add(cross_periodogram(basis, pair.x, pair.y).values.real());
  }

  McReport report;
  report.name = "cross-periodogram moments";
  report.seed = seed;
  report.trials = trials;
  report.params = {{"R", static_cast<double>(R)},
                   {"n", static_cast<double>(n)}};
  report.gate = gate;
  report.empirical_mean = acc.mean();
  report.empirical_var = acc.variance();
  report.theoretical_mean = truth.values.real();
  report.theoretical_var = theo_var;

  int mean_pass = 0;
  bool var_ok = true;
  double max_rel = 0.0;
  for (int i = 0; i < n; ++i) {
    const double se = std::sqrt(theo_var(i) / trials);
    const double mean_dev = std::abs(report.empirical_mean(i) -
                                     report.theoretical_mean(i));
    // Absolute floor guards frequencies that are numerically dead, where
    // both the deviation and its standard error are rounding dust.
    if (mean_dev <= std::max(gate.mean_se_limit * se, kZeroMeanEps))
      ++mean_pass;
    if (se > 0.0)
      max_rel = std::max(max_rel, mean_dev / se / gate.mean_se_limit);
    if (theo_var(i) > kZeroVarianceEps) {
      const double ratio = report.empirical_var(i) / theo_var(i);
      if (ratio < gate.var_ratio_lo || ratio > gate.var_ratio_hi) {
        var_ok = false;
        report.failures.push_back(
            "variance ratio " + std::to_string(ratio) + " at frequency " +
            std::to_string(i));
      }
    } else if (report.empirical_var(i) > kZeroVarianceEps) {
      var_ok = false;
      report.failures.push_back("nonzero empirical variance at dead frequency " +
                                std::to_string(i));
    }
  }
  const double frac = static_cast<double>(mean_pass) / n;
  if (frac < gate.mean_pass_fraction)
    report.failures.push_back("mean gate fraction " + std::to_string(frac));
  report.max_rel_deviation = max_rel;
  report.passed = var_ok && frac >= gate.mean_pass_fraction;
  report.wall_seconds = seconds_since(start);
  return report;
}

McReport mc_windowed_bias(const SpectralBasis& basis, const WindowBank& bank,
                          const FilterKernel& k1, const FilterKernel& k2,
                          int trials, std::uint64_t seed, McGate gate) {
  if (trials < 500) throw std::invalid_argument("need at least 500 trials");
  const auto start = Clock::now();
  const int n = basis.size();

  const SpectralDensity oracle =
      windowed_expectation(basis, bank, true_gcsd(basis, k1, k2));

  MomentAccumulator acc(n);
  for (int t = 0; t < trials; ++t) {
    const JwsPair pair =
        generate_jws_pair(basis, k1, k2, 1, mix_seed(seed, t));
    const SpectralDensity est = windowed_average_cross_periodogram(
        basis, pair.x.realization(0), pair.y.realization(0), bank);
    acc.add(est.values.real());
  }

  McReport report;
  report.name = "windowed-average bias";
  report.seed = seed;
  report.trials = trials;
  report.params = {{"M", static_cast<double>(bank.size())},
                   {"n", static_cast<double>(n)}};
  report.gate = gate;
  report.empirical_mean = acc.mean();
  report.empirical_var = acc.variance();
  report.theoretical_mean = oracle.values.real();
  report.theoretical_var = Eigen::VectorXd::Zero(n);

  bool ok = true;
  double max_rel = 0.0;
  for (int i = 0; i < n; ++i) {
    const double se = std::sqrt(report.empirical_var(i) / trials);
    const double dev =
        std::abs(report.empirical_mean(i) - report.theoretical_mean(i));
    if (se > 0.0) max_rel = std::max(max_rel, dev / se / gate.mean_se_limit);
    if (dev > std::max(gate.mean_se_limit * se, kZeroMeanEps)) {
      ok = false;
      report.failures.push_back("bias " + std::to_string(dev / se) +
                                " SE at frequency " + std::to_string(i));
    }
  }
  report.max_rel_deviation = max_rel;
  report.passed = ok;
  report.wall_seconds = seconds_since(start);
  return report;
}

McReport mc_windowed_variance_trace(const SpectralBasis& basis,
                                    const WindowBank& bank,
                                    const FilterKernel& k1,
                                    const FilterKernel& k2, int trials,
                                    std::uint64_t seed, McGate gate) {
  if (trials < 2000) throw std::invalid_argument("need at least 2000 trials");
  const auto start = Clock::now();
  const int n = basis.size();

  const SpectralDensity p_x = true_gpsd(basis, k1);
  const SpectralDensity p_y = true_gpsd(basis, k2);
  const SpectralDensity p_xy = true_gcsd(basis, k1, k2);
  const double theo_trace =
      windowed_variance_trace(basis, bank, p_x, p_y, p_xy);

  MomentAccumulator acc(n);
  for (int t = 0; t < trials; ++t) {
    const JwsPair pair =
        generate_jws_pair(basis, k1, k2, 1, mix_seed(seed, t));
    const SpectralDensity est = windowed_average_cross_periodogram(
        basis, pair.x.realization(0), pair.y.realization(0), bank);
    acc.add(est.values.real());
  }

  McReport report;
  report.name = "windowed-average variance trace";
  report.seed = seed;
  report.trials = trials;
  report.params = {{"M", static_cast<double>(bank.size())},
                   {"n", static_cast<double>(n)}};
  report.gate = gate;
  report.empirical_mean = acc.mean();
  report.empirical_var = acc.variance();
  report.theoretical_mean =
      windowed_expectation(basis, bank, p_xy).values.real();
  report.theoretical_var = Eigen::VectorXd::Zero(n);
  report.empirical_trace = report.empirical_var.sum();
  report.theoretical_trace = theo_trace;

  const double ratio = report.empirical_trace / theo_trace;
  report.max_rel_deviation = std::abs(ratio - 1.0);
  report.passed = ratio >= gate.var_ratio_lo && ratio <= gate.var_ratio_hi;
  if (!report.passed)
    report.failures.push_back("trace ratio " + std::to_string(ratio));
  report.wall_seconds = seconds_since(start);
  return report;
}

double mse(const SpectralDensity& est, const SpectralDensity& truth) {
  require_same_grid(est, truth);
  return (est.values - truth.values).squaredNorm() / est.size();
}

SharedComponentReport shared_component_experiment(
    const SpectralBasis& basis, const SharedComponentConfig& config) {
  const int n = basis.size();
  auto check_index = [n](int i) {
    if (i < 0 || i >= n)
      throw std::out_of_range("eigenvector index out of range");
  };
  check_index(config.i_shared);
  check_index(config.i_x);
  check_index(config.i_y);
  if (config.i_shared == config.i_x || config.i_shared == config.i_y ||
      config.i_x == config.i_y)
    throw std::invalid_argument("eigenvector indices must be distinct");

  const Eigen::VectorXd x =
      config.amp_shared * basis.eigenvectors.col(config.i_shared) +
      config.amp_private * basis.eigenvectors.col(config.i_x);
  const Eigen::VectorXd y =
      config.amp_shared * basis.eigenvectors.col(config.i_shared) +
      config.amp_private * basis.eigenvectors.col(config.i_y);

  SpectralDensity gcsd, psd_x, psd_y;
  int shared_index = config.i_shared;
  if (config.estimator == SharedEstimator::windowed_average) {
    const WindowBank bank = random_window_bank(
        basis, config.window_count, config.noise_scale, config.seed);
    gcsd = windowed_average_cross_periodogram(basis, x, y, bank);
    psd_x = windowed_average_cross_periodogram(basis, x, x, bank);
    psd_y = windowed_average_cross_periodogram(basis, y, y, bank);
  } else {
    gcsd = wft_estimator(basis, x, y, config.wft_filters);
    psd_x = wft_estimator(basis, x, x, config.wft_filters);
    psd_y = wft_estimator(basis, y, y, config.wft_filters);
    // Map the shared eigenvalue to the nearest grid point.
    const double lambda_shared = basis.eigenvalues(config.i_shared);
    int best = 0;
    for (int k = 1; k < gcsd.size(); ++k)
      if (std::abs(gcsd.frequencies(k) - lambda_shared) <
          std::abs(gcsd.frequencies(best) - lambda_shared))
        best = k;
    shared_index = best;
  }

  auto abs_argmax = [](const SpectralDensity& d) {
    int arg = 0;
    for (int i = 1; i < d.size(); ++i)
      if (std::abs(d.values(i)) > std::abs(d.values(arg))) arg = i;
    return arg;
  };

  SharedComponentReport report;
  report.shared_index = shared_index;
  report.gcsd_argmax = abs_argmax(gcsd);
  report.psd_x_argmax = abs_argmax(psd_x);
  report.psd_y_argmax = abs_argmax(psd_y);
  report.gcsd_peak = std::abs(gcsd.values(report.gcsd_argmax));
  report.shared_detected = report.gcsd_argmax == shared_index;
  report.psd_masks_shared = report.psd_x_argmax != shared_index &&
                            report.psd_y_argmax != shared_index;
  return report;
}

RScalingReport r_scaling_experiment(const SpectralBasis& basis,
                                    const FilterKernel& k1,
                                    const FilterKernel& k2,
                                    std::vector<int> realization_counts,
                                    int seeds, std::uint64_t seed,
                                    double required_fraction) {
  if (realization_counts.size() < 2)
    throw std::invalid_argument("need at least two realization counts");
  if (seeds < 1) throw std::invalid_argument("need at least one seed");
  const SpectralDensity truth = true_gcsd(basis, k1, k2);

  RScalingReport report;
  report.realization_counts = realization_counts;
  report.seeds = seeds;
  report.required_fraction = required_fraction;
  report.mse_per_seed.resize(seeds,
                             static_cast<int>(realization_counts.size()));
  for (int s = 0; s < seeds; ++s) {
    const std::uint64_t trial_seed = mix_seed(seed, s);
    bool decreasing = true;
    // Realizations are drawn from per-index substreams, so the smaller-R
    // estimates reuse a prefix of the larger-R data (common random numbers).
    for (std::size_t k = 0; k < realization_counts.size(); ++k) {
      const JwsPair pair = generate_jws_pair(basis, k1, k2,
                                             realization_counts[k], trial_seed);
      report.mse_per_seed(s, static_cast<int>(k)) =
          mse(cross_periodogram(basis, pair.x, pair.y), truth);
      if (k > 0 && report.mse_per_seed(s, static_cast<int>(k)) >=
                       report.mse_per_seed(s, static_cast<int>(k) - 1))
        decreasing = false;
    }
    if (decreasing) ++report.strictly_decreasing;
  }
  report.passed = report.strictly_decreasing >=
                  static_cast<int>(std::ceil(required_fraction * seeds));
  return report;
}

RobustBreakdownReport robust_breakdown_experiment(
    const SpectralBasis& basis, const RobustBreakdownConfig& config) {
  if (basis.size() < 31)
    throw std::invalid_argument("breakdown experiment expects the karate graph");

  // Constructions: a signal peaked at eigenvector 19 (the 20th graph
  // frequency), with one corrupted node value per signal.
  const auto& v = basis.eigenvectors;
  Eigen::VectorXd x_clean, y_clean, x_out, y_out;
  if (config.cross) {
    x_clean = 5.0 * v.col(19) + 20.0 * v.col(29);
    y_clean = 5.0 * v.col(19) + 20.0 * v.col(9);
    x_out = inject_outlier(x_clean, 24, -10.0);
    y_out = inject_outlier(y_clean, 14, 10.0);
  } else {
    x_clean = 3.0 * v.col(19);
    y_clean = x_clean;
    x_out = inject_outlier(x_clean, 24, 4.0);
    y_out = x_out;
  }

  auto abs_argmax = [](const SpectralDensity& d) {
    int arg = 0;
    for (int i = 1; i < d.size(); ++i)
      if (std::abs(d.values(i)) > std::abs(d.values(arg))) arg = i;
    return arg;
  };

  RobustBreakdownReport report;
  report.seeds = config.seeds;
  for (int s = 0; s < config.seeds; ++s) {
    const WindowBank bank =
        random_window_bank(basis, config.window_count, config.noise_scale,
                           mix_seed(config.seed, s));
    const int clean_arg = abs_argmax(
        windowed_average_cross_periodogram(basis, x_clean, y_clean, bank));
    if (s == 0) report.clean_argmax = clean_arg;
    const int plain_arg = abs_argmax(
        windowed_average_cross_periodogram(basis, x_out, y_out, bank));
    const RobustResult robust =
        config.cross ? m_type_csd(basis, x_out, y_out, &bank, config.huber)
                     : m_type_psd(basis, x_out, &bank, config.huber);
    const int robust_arg = abs_argmax(robust.estimate);
    if (robust_arg == clean_arg) ++report.robust_match;
    if (plain_arg != clean_arg) ++report.nonrobust_differ;
  }
  report.passed =
      report.robust_match >=
          static_cast<int>(std::ceil(report.robust_match_min * config.seeds)) &&
      report.nonrobust_differ >=
          static_cast<int>(std::ceil(report.nonrobust_differ_min * config.seeds));
  return report;
}

}  // namespace gcsa
