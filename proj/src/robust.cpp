#include "gcsa/robust.hpp"

#include <cmath>
#include <stdexcept>

namespace gcsa {

double huber_loss(double t, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("huber cutoff must be > 0");
  const double a = std::abs(t);
  return a <= c ? t * t : 2.0 * c * (a - 0.5 * c);
}

namespace {

void check_config(const HuberConfig& config) {
  if (!(config.cutoff > 0.0))
    throw std::invalid_argument("huber cutoff must be > 0");
  if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (config.max_iter < 1)
    throw std::invalid_argument("max_iter must be >= 1");
  if (!(config.weight_floor > 0.0))
    throw std::invalid_argument("weight_floor must be > 0");
}

Eigen::MatrixXd design_matrix(const SpectralBasis& basis) {
  const int n = basis.size();
  Eigen::MatrixXd g(static_cast<Eigen::Index>(n) * n, n);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd outer =
        basis.eigenvectors.col(i) * basis.eigenvectors.col(i).transpose();
    g.col(i) =
        Eigen::Map<const Eigen::VectorXd>(outer.data(), static_cast<Eigen::Index>(n) * n);
  }
  return g;
}

double huber_objective(const Eigen::VectorXd& residual, double c) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < residual.size(); ++i)
    acc += huber_loss(residual(i), c);
  return acc;
}

}  // namespace

RobustResult irls_solve(const SpectralBasis& basis,
                        const Eigen::MatrixXd& sigma_hat,
                        const HuberConfig& config,
                        const Eigen::VectorXd& init) {
  check_config(config);
  const int n = basis.size();
  if (sigma_hat.rows() != n || sigma_hat.cols() != n)
    throw std::invalid_argument("sample covariance dimension mismatch");
  if (init.size() != n)
    throw std::invalid_argument("initial estimate dimension mismatch");
  if (!init.allFinite())
    throw std::invalid_argument("initial estimate must be finite");

  const Eigen::MatrixXd g = design_matrix(basis);
  const Eigen::VectorXd sigma_vec = Eigen::Map<const Eigen::VectorXd>(
      sigma_hat.data(), static_cast<Eigen::Index>(n) * n);
  const double c = config.cutoff;

  Eigen::VectorXd p = init;
  RobustResult result;
  result.objective_history.push_back(huber_objective(sigma_vec - g * p, c));

  for (int iter = 1; iter <= config.max_iter; ++iter) {
    const Eigen::VectorXd residual = sigma_vec - g * p;
    Eigen::VectorXd weights(residual.size());
    for (Eigen::Index i = 0; i < residual.size(); ++i) {
      const double a = std::abs(residual(i));
      const double w = a <= c ? 1.0 : c / a;
      weights(i) = std::max(w, config.weight_floor);
    }
    const Eigen::MatrixXd gw = weights.asDiagonal() * g;
    const Eigen::MatrixXd normal = g.transpose() * gw;
    const Eigen::VectorXd rhs = gw.transpose() * sigma_vec;
    const Eigen::VectorXd p_next = normal.ldlt().solve(rhs);

    const double step = (p_next - p).norm();
    const double scale = std::max(p.norm(), 1e-300);
    p = p_next;
    result.iterations = iter;
    result.objective_history.push_back(huber_objective(sigma_vec - g * p, c));
    if (step <= config.tol * scale) {
      result.converged = true;
      break;
    }
  }

  result.estimate.frequencies = basis.eigenvalues;
  result.estimate.values = p.cast<std::complex<double>>();
  result.estimate.kind = DensityKind::csd;
  return result;
}

RobustResult irls_solve_complex(const SpectralBasis& basis,
                                const Eigen::MatrixXcd& sigma_hat,
                                const HuberConfig& config,
                                const Eigen::VectorXcd& init) {
  RobustResult re = irls_solve(basis, sigma_hat.real(), config, init.real());
  RobustResult im = irls_solve(basis, sigma_hat.imag(), config, init.imag());
  RobustResult result;
  result.estimate.frequencies = basis.eigenvalues;
  result.estimate.values.resize(basis.size());
  result.estimate.values.real() = re.estimate.values.real();
  result.estimate.values.imag() = im.estimate.values.real();
  result.estimate.kind = DensityKind::csd;
  result.converged = re.converged && im.converged;
  result.iterations = std::max(re.iterations, im.iterations);
  result.objective_history = re.objective_history;
  for (std::size_t i = 0; i < im.objective_history.size() &&
                          i < result.objective_history.size();
       ++i)
    result.objective_history[i] += im.objective_history[i];
  return result;
}

Eigen::MatrixXd windowed_sample_covariance(const Eigen::VectorXd& x,
                                           const WindowBank& bank) {
  return windowed_sample_cross_covariance(x, x, bank);
}

Eigen::MatrixXd windowed_sample_cross_covariance(const Eigen::VectorXd& x,
                                                 const Eigen::VectorXd& y,
                                                 const WindowBank& bank) {
  if (bank.size() == 0) throw std::invalid_argument("window bank is empty");
  if (x.size() != bank.n() || y.size() != bank.n())
    throw std::invalid_argument("signal/window dimension mismatch");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(x.size(), x.size());
  for (const auto& w : bank.windows) {
    const Eigen::VectorXd xw = (w.array() * x.array()).matrix();
    const Eigen::VectorXd yw = (w.array() * y.array()).matrix();
    acc += xw * yw.transpose();
  }
  return acc / bank.size();
}

namespace {

RobustResult m_type_from_sigma(const SpectralBasis& basis,
                               const Eigen::MatrixXd& sigma,
                               const HuberConfig& config, bool self) {
  // Non-robust initialization: diag(V^T Sigma^ V).
  const Eigen::VectorXd init =
      (basis.eigenvectors.transpose() * sigma * basis.eigenvectors).diagonal();
  RobustResult result = irls_solve(basis, sigma, config, init);
  result.estimate.kind = self ? DensityKind::psd : DensityKind::csd;
  return result;
}

}  // namespace

RobustResult m_type_psd(const SpectralBasis& basis, const Eigen::VectorXd& x,
                        const WindowBank* bank, const HuberConfig& config) {
  const Eigen::MatrixXd sigma =
      bank ? windowed_sample_covariance(x, *bank)
           : Eigen::MatrixXd(x * x.transpose());
  return m_type_from_sigma(basis, sigma, config, /*self=*/true);
}

RobustResult m_type_psd(const SpectralBasis& basis, const SignalEnsemble& ex,
                        const HuberConfig& config) {
  return m_type_from_sigma(basis, sample_cross_covariance(ex, ex).matrix,
                           config, /*self=*/true);
}

RobustResult m_type_csd(const SpectralBasis& basis, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y, const WindowBank* bank,
                        const HuberConfig& config) {
  const bool self = (&x == &y) || (x.array() == y.array()).all();
  const Eigen::MatrixXd sigma =
      bank ? windowed_sample_cross_covariance(x, y, *bank)
           : Eigen::MatrixXd(x * y.transpose());
  return m_type_from_sigma(basis, sigma, config, self);
}

Eigen::VectorXd inject_outlier(const Eigen::VectorXd& x, int node,
                               double value) {
  if (node < 0 || node >= x.size())
    throw std::out_of_range("outlier node index out of range");
  Eigen::VectorXd out = x;
  out(node) = value;
  return out;
}

}  // namespace gcsa
