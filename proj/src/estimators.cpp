#include "gcsa/estimators.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "gcsa/filters.hpp"
#include "gcsa/random.hpp"

namespace gcsa {

namespace {

void check_window_norm(const Eigen::VectorXd& w) {
  const double n = static_cast<double>(w.size());
  if (std::abs(w.squaredNorm() - n) > 1e-8 * n)
    throw std::invalid_argument("window does not satisfy ||w||^2 = N");
}

Eigen::VectorXcd to_complex(const Eigen::VectorXd& v) {
  return v.cast<std::complex<double>>();
}

}  // namespace

WindowBank make_window_bank(std::vector<Eigen::VectorXd> windows) {
  if (windows.empty()) throw std::invalid_argument("window bank is empty");
  for (const auto& w : windows) {
    if (w.size() != windows.front().size())
      throw std::invalid_argument("window dimensions differ within the bank");
    check_window_norm(w);
  }
  return {std::move(windows)};
}

WindowBank all_ones_bank(int n, int count) {
  if (n < 1 || count < 1)
    throw std::invalid_argument("bank dimensions must be positive");
  return {std::vector<Eigen::VectorXd>(count, Eigen::VectorXd::Ones(n))};
}

WindowBank random_window_bank(const SpectralBasis& basis, int count,
                              double noise_scale, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("window count must be >= 1");
  if (!(noise_scale > 0.0))
    throw std::invalid_argument("noise_scale must be > 0");
  const int n = basis.size();
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  std::vector<Eigen::VectorXd> windows;
  windows.reserve(count);
  for (int m = 0; m < count; ++m) {
    Eigen::VectorXd w;
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      const std::uint64_t stream =
          attempt == 0 ? static_cast<std::uint64_t>(m)
                       : static_cast<std::uint64_t>(count) +
                             100ULL * static_cast<std::uint64_t>(m) + attempt;
      GaussianStream g(seed, stream);
      Eigen::MatrixXd dual =
          Eigen::MatrixXd::Identity(n, n) + noise_scale * g.normal_matrix(n, n);
      w = (basis.eigenvectors * dual * basis.eigenvectors.transpose())
              .diagonal();
      const double norm = w.norm();
      if (norm > 1e-12) {
        w *= sqrt_n / norm;
        ok = true;
      }
    }
    if (!ok)
      throw std::runtime_error("degenerate window persisted after 100 draws");
    windows.push_back(std::move(w));
  }
  return {std::move(windows)};
}

Eigen::MatrixXd window_dual(const SpectralBasis& basis,
                            const Eigen::VectorXd& w) {
  if (w.size() != basis.size())
    throw std::invalid_argument("window dimension mismatch");
  return basis.eigenvectors.transpose() * w.asDiagonal() * basis.eigenvectors;
}

SpectralDensity cross_periodogram(const SpectralBasis& basis,
                                  const SignalEnsemble& ex,
                                  const SignalEnsemble& ey,
                                  PeriodogramForm form,
                                  bool general_least_squares) {
  if (ex.n() != ey.n() || ex.realizations() != ey.realizations())
    throw std::invalid_argument("ensemble shape mismatch");
  if (ex.n() != basis.size())
    throw std::invalid_argument("basis/ensemble dimension mismatch");
  const int n = ex.n();
  const int R = ex.realizations();
  const bool self =
      (&ex == &ey) || (ex.data.array() == ey.data.array()).all();

  Eigen::VectorXd values(n);
  switch (form) {
    case PeriodogramForm::periodogram: {
      // (1/R) sum_r (V^T x_r) o (V^T y_r); summation in fixed r order.
      values.setZero();
      for (int r = 0; r < R; ++r) {
        const Eigen::VectorXd xt =
            basis.eigenvectors.transpose() * ex.data.row(r).transpose();
        const Eigen::VectorXd yt =
            basis.eigenvectors.transpose() * ey.data.row(r).transpose();
        values += (xt.array() * yt.array()).matrix();
      }
      values /= R;
      break;
    }
    case PeriodogramForm::correlogram: {
      const CrossCovariance c = sample_cross_covariance(ex, ey);
      values = (basis.eigenvectors.transpose() * c.matrix * basis.eigenvectors)
                   .diagonal();
      break;
    }
    case PeriodogramForm::least_squares: {
      const CrossCovariance c = sample_cross_covariance(ex, ey);
      Eigen::MatrixXd g(n * n, n);
      for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd outer =
            basis.eigenvectors.col(i) * basis.eigenvectors.col(i).transpose();
        g.col(i) = Eigen::Map<const Eigen::VectorXd>(outer.data(), n * n);
      }
      const Eigen::VectorXd sigma_vec =
          Eigen::Map<const Eigen::VectorXd>(c.matrix.data(), n * n);
      if (general_least_squares) {
        values = (g.transpose() * g).ldlt().solve(g.transpose() * sigma_vec);
      } else {
        const Eigen::MatrixXd gram = g.transpose() * g;
        if (!gram.isApprox(Eigen::MatrixXd::Identity(n, n), 1e-8))
          throw std::runtime_error("design matrix is not orthonormal");
        values = g.transpose() * sigma_vec;
      }
      break;
    }
  }

  SpectralDensity d;
  d.frequencies = basis.eigenvalues;
  d.values = to_complex(values);
  d.kind = self ? DensityKind::psd : DensityKind::csd;
  return d;
}

SpectralDensity periodogram(const SpectralBasis& basis,
                            const SignalEnsemble& ex, PeriodogramForm form) {
  return cross_periodogram(basis, ex, ex, form);
}

SpectralDensity windowed_cross_periodogram(const SpectralBasis& basis,
                                           const Eigen::VectorXd& x,
                                           const Eigen::VectorXd& y,
                                           const Eigen::VectorXd& w) {
  const int n = basis.size();
  if (x.size() != n || y.size() != n || w.size() != n)
    throw std::invalid_argument("signal/window dimension mismatch");
  check_window_norm(w);
  const Eigen::VectorXd xt =
      basis.eigenvectors.transpose() * (w.array() * x.array()).matrix();
  const Eigen::VectorXd yt =
      basis.eigenvectors.transpose() * (w.array() * y.array()).matrix();
  SpectralDensity d;
  d.frequencies = basis.eigenvalues;
  d.values = to_complex((xt.array() * yt.array()).matrix());
  d.kind = (&x == &y || (x.array() == y.array()).all()) ? DensityKind::psd
                                                        : DensityKind::csd;
  return d;
}

SpectralDensity windowed_average_cross_periodogram(const SpectralBasis& basis,
                                                   const Eigen::VectorXd& x,
                                                   const Eigen::VectorXd& y,
                                                   const WindowBank& bank) {
  if (bank.size() == 0) throw std::invalid_argument("window bank is empty");
  SpectralDensity acc = windowed_cross_periodogram(basis, x, y, bank.windows[0]);
  for (int m = 1; m < bank.size(); ++m)
    acc.values += windowed_cross_periodogram(basis, x, y, bank.windows[m]).values;
  acc.values /= bank.size();
  return acc;
}

SpectralDensity windowed_expectation(const SpectralBasis& basis,
                                     const WindowBank& bank,
                                     const SpectralDensity& p_true) {
  if (bank.size() == 0) throw std::invalid_argument("window bank is empty");
  if (p_true.size() != basis.size())
    throw std::invalid_argument("density dimension mismatch");
  const int n = basis.size();
  Eigen::VectorXd acc_re = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd acc_im = Eigen::VectorXd::Zero(n);
  for (const auto& w : bank.windows) {
    const Eigen::MatrixXd dual = window_dual(basis, w);
    // Real V: W~ o W~* is the elementwise square.
    const Eigen::MatrixXd sq = (dual.array() * dual.array()).matrix();
    acc_re += sq * p_true.values.real();
    acc_im += sq * p_true.values.imag();
  }
  SpectralDensity d;
  d.frequencies = p_true.frequencies;
  d.values.resize(n);
  d.values.real() = acc_re / bank.size();
  d.values.imag() = acc_im / bank.size();
  d.kind = p_true.kind;
  return d;
}

WftDesign wft_design(double lambda_max, int K) {
  if (K < 2) throw std::invalid_argument("K must be >= 2");
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("lambda_max must be positive");
  const double k = static_cast<double>(K);
  return {lambda_max / k, (k + 1.0) * lambda_max / (k * k)};
}

SpectralDensity wft_estimator(const SpectralBasis& basis,
                              const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y, int K,
                              bool include_zero) {
  const int n = basis.size();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("signal dimension mismatch");
  const auto [tau, sigma2] = wft_design(basis.lambda_max(), K);

  const Eigen::VectorXd xt = basis.eigenvectors.transpose() * x;
  const Eigen::VectorXd yt = basis.eigenvectors.transpose() * y;

  const int k_first = include_zero ? 0 : 1;
  SpectralDensity d;
  d.frequencies.resize(K + 1 - k_first);
  d.values.resize(K + 1 - k_first);
  for (int k = k_first; k <= K; ++k) {
    const double center = k * tau;
    // g_k(lambda_l) = g(lambda_l - k tau); exact filtering keeps the inner
    // product in the spectral domain: <g_k(S)x, g_k(S)y> = sum g_k^2 xt yt.
    const Eigen::ArrayXd gk =
        (-(basis.eigenvalues.array() - center).square() / sigma2).exp();
    const double frob2 = gk.square().sum();  // ||g_k(S)||_F^2
    if (frob2 <= 0.0)
      throw std::runtime_error("degenerate WFT kernel normalization");
    const double num = (gk.square() * xt.array() * yt.array()).sum();
    d.frequencies(k - k_first) = center;
    d.values(k - k_first) = num / frob2;
  }
  d.kind = (&x == &y || (x.array() == y.array()).all()) ? DensityKind::psd
                                                        : DensityKind::csd;
  return d;
}

SpectralDensity wft_estimator_chebyshev(const ShiftOperator& s,
                                        double lambda_max,
                                        const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y, int K,
                                        int order, int probes,
                                        std::uint64_t seed) {
  const auto n = s.matrix.rows();
  if (x.size() != n || y.size() != n)
    throw std::invalid_argument("signal dimension mismatch");
  if (probes < 1) throw std::invalid_argument("probes must be >= 1");
  const auto [tau, sigma2] = wft_design(lambda_max, K);

  // Rademacher probes for tr(g_k(S)^2), shared across k.
  Eigen::MatrixXd z(n, probes);
  GaussianStream g(seed, 0x5157u);
  for (int p = 0; p < probes; ++p)
    for (int i = 0; i < n; ++i) z(i, p) = g.uniform() < 0.5 ? -1.0 : 1.0;

  SpectralDensity d;
  d.frequencies.resize(K);
  d.values.resize(K);
  for (int k = 1; k <= K; ++k) {
    const double center = k * tau;
    FilterKernel gk("wft_shifted",
                    [center, s2 = sigma2](double lam) {
                      const double u = lam - center;
                      return std::exp(-u * u / s2);
                    },
                    /*normalized_domain=*/false, lambda_max);
    const auto fit = chebyshev_fit(gk, order, lambda_max);
    const Eigen::VectorXd fx = chebyshev_apply(s, fit.filter, x);
    const Eigen::VectorXd fy = chebyshev_apply(s, fit.filter, y);
    double frob2 = 0.0;
    for (int p = 0; p < probes; ++p)
      frob2 += chebyshev_apply(s, fit.filter, z.col(p)).squaredNorm();
    frob2 /= probes;
    if (frob2 <= 0.0)
      throw std::runtime_error("degenerate WFT kernel normalization");
    d.frequencies(k - 1) = center;
    d.values(k - 1) = fx.dot(fy) / frob2;
  }
  d.kind = (&x == &y || (x.array() == y.array()).all()) ? DensityKind::psd
                                                        : DensityKind::csd;
  return d;
}

SpectralDensity coherence(const SpectralDensity& p_x, const SpectralDensity& p_y,
                          const SpectralDensity& p_xy, double floor) {
  require_same_grid(p_x, p_xy);
  require_same_grid(p_y, p_xy);
  if (floor < 0.0) throw std::invalid_argument("floor must be >= 0");
  const int n = p_xy.size();
  SpectralDensity c;
  c.frequencies = p_xy.frequencies;
  c.values.resize(n);
  c.kind = DensityKind::coherence;
  c.clipped.assign(n, false);
  for (int i = 0; i < n; ++i) {
    const double px = std::max(p_x.values(i).real(), floor);
    const double py = std::max(p_y.values(i).real(), floor);
    double v = (px > 0.0 && py > 0.0)
                   ? std::norm(p_xy.values(i)) / (px * py)
                   : 0.0;
    if (v > 1.0) {
      v = 1.0;
      c.clipped[i] = true;
    }
    if (v < 0.0) v = 0.0;
    c.values(i) = v;
  }
  return c;
}

double default_coherence_floor(const SpectralDensity& p_x) {
  return 1e-12 * p_x.values.real().maxCoeff();
}

Eigen::VectorXd theoretical_variance(const SpectralDensity& p_x,
                                     const SpectralDensity& p_y,
                                     const SpectralDensity& p_xy, int R) {
  if (R < 1) throw std::invalid_argument("R must be >= 1");
  require_same_grid(p_x, p_xy);
  require_same_grid(p_y, p_xy);
  return ((p_xy.values.array().abs2() +
           p_x.values.real().array() * p_y.values.real().array()) /
          static_cast<double>(R))
      .matrix();
}

double windowed_variance_trace(const SpectralBasis& basis,
                               const WindowBank& bank,
                               const SpectralDensity& p_x,
                               const SpectralDensity& p_y,
                               const SpectralDensity& p_xy) {
  if (bank.size() == 0) throw std::invalid_argument("window bank is empty");
  require_same_grid(p_x, p_xy);
  require_same_grid(p_y, p_xy);
  if (p_xy.size() != basis.size())
    throw std::invalid_argument("density dimension mismatch");
  const int m_count = bank.size();
  std::vector<Eigen::MatrixXd> duals;
  duals.reserve(m_count);
  for (const auto& w : bank.windows) duals.push_back(window_dual(basis, w));

  const Eigen::VectorXd px = p_x.values.real();
  const Eigen::VectorXd py = p_y.values.real();
  const Eigen::VectorXd pxy_re = p_xy.values.real();
  const Eigen::VectorXd pxy_im = p_xy.values.imag();
  double acc = 0.0;
  for (int m = 0; m < m_count; ++m) {
    for (int mp = 0; mp < m_count; ++mp) {
      const Eigen::MatrixXd wmm =
          (duals[m].array() * duals[mp].array()).matrix();
      acc += (wmm * pxy_re).squaredNorm() + (wmm * pxy_im).squaredNorm() +
             (wmm * px).dot(wmm * py);
    }
  }
  return acc / (static_cast<double>(m_count) * m_count);
}

double window_pair_csd_term(const SpectralBasis& basis,
                            const Eigen::VectorXd& w_m,
                            const Eigen::VectorXd& w_mp,
                            const SpectralDensity& p_xy) {
  const Eigen::MatrixXd wmm = (window_dual(basis, w_m).array() *
                               window_dual(basis, w_mp).array())
                                  .matrix();
  return (wmm * p_xy.values.real()).squaredNorm() +
         (wmm * p_xy.values.imag()).squaredNorm();
}

}  // namespace gcsa
