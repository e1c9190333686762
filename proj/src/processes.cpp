#include "gcsa/processes.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gcsa/random.hpp"

namespace gcsa {

SignalEnsemble generate_white(int n, int R, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("dimension must be >= 1");
  if (R < 1) throw std::invalid_argument("realization count must be >= 1");
  SignalEnsemble e;
  e.seed = seed;
  e.data.resize(R, n);
  for (int r = 0; r < R; ++r) {
    GaussianStream stream(seed, static_cast<std::uint64_t>(r));
    e.data.row(r) = stream.normal_vector(n).transpose();
  }
  return e;
}

JwsPair generate_jws_pair(const SpectralBasis& basis, const FilterKernel& k1,
                          const FilterKernel& k2, int R, std::uint64_t seed,
                          double rho) {
  if (R < 1) throw std::invalid_argument("realization count must be >= 1");
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("rho must lie in [0, 1]");
  const int n = basis.size();

  // Substreams 2r / 2r+1 per realization so the shared-input case (rho = 1)
  // and the correlated case draw identical eps1 sequences for a given seed.
  Eigen::MatrixXd eps1(n, R), eps2(n, R);
  const double mix = std::sqrt(1.0 - rho * rho);
  for (int r = 0; r < R; ++r) {
    GaussianStream s1(seed, 2 * static_cast<std::uint64_t>(r));
    eps1.col(r) = s1.normal_vector(n);
    if (rho == 1.0) {
      eps2.col(r) = eps1.col(r);
    } else {
      GaussianStream s2(seed, 2 * static_cast<std::uint64_t>(r) + 1);
      eps2.col(r) = rho * eps1.col(r) + mix * s2.normal_vector(n);
    }
  }

  const Eigen::MatrixXd h1 = filter_matrix(basis, k1);
  const Eigen::MatrixXd h2 = filter_matrix(basis, k2);
  JwsPair pair;
  pair.x.seed = seed;
  pair.y.seed = seed;
  pair.x.data = (h1 * eps1).transpose();
  pair.y.data = (h2 * eps2).transpose();
  return pair;
}

Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& x) {
  if (x.size() != basis.size())
    throw std::invalid_argument("signal dimension mismatch");
  return basis.eigenvectors.transpose() * x;
}

Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXd& xt) {
  if (xt.size() != basis.size())
    throw std::invalid_argument("spectrum dimension mismatch");
  return basis.eigenvectors * xt;
}

CrossCovariance sample_cross_covariance(const SignalEnsemble& ex,
                                        const SignalEnsemble& ey) {
  if (ex.n() != ey.n() || ex.realizations() != ey.realizations())
    throw std::invalid_argument("ensemble shape mismatch");
  CrossCovariance c;
  c.matrix = ex.data.transpose() * ey.data / ex.realizations();
  c.kind = (&ex == &ey || (ex.data.array() == ey.data.array()).all())
               ? CovarianceKind::autocovariance
               : CovarianceKind::cross;
  return c;
}

double stationarity_measure(const SpectralBasis& basis,
                            const CrossCovariance& c) {
  if (c.matrix.rows() != basis.size() || c.matrix.cols() != basis.size())
    throw std::invalid_argument("covariance dimension mismatch");
  const Eigen::MatrixXd m =
      basis.eigenvectors.transpose() * c.matrix * basis.eigenvectors;
  const double denom = m.norm();
  if (denom == 0.0)
    throw std::invalid_argument("stationarity measure of a zero matrix");
  return m.diagonal().norm() / denom;
}

SpectralDensity true_gcsd(const SpectralBasis& basis, const FilterKernel& k1,
                          const FilterKernel& k2, double rho) {
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("rho must lie in [0, 1]");
  const Eigen::VectorXd h1 = kernel_values(k1, basis);
  const Eigen::VectorXd h2 = kernel_values(k2, basis);
  SpectralDensity d;
  d.frequencies = basis.eigenvalues;
  d.values = (rho * h1.array() * h2.array()).matrix().cast<std::complex<double>>();
  d.kind = DensityKind::csd;
  return d;
}

SpectralDensity true_gpsd(const SpectralBasis& basis, const FilterKernel& k) {
  SpectralDensity d = true_gcsd(basis, k, k, 1.0);
  d.kind = DensityKind::psd;
  return d;
}

namespace {

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

}  // namespace

std::string ensemble_to_csv(const SignalEnsemble& e) {
  std::ostringstream out;
  out << "# n=" << e.n() << " R=" << e.realizations() << " seed=" << e.seed
      << "\n";
  for (int r = 0; r < e.realizations(); ++r) {
    for (int j = 0; j < e.n(); ++j) {
      if (j) out << ',';
      out << format_double(e.data(r, j));
    }
    out << '\n';
  }
  return out.str();
}

SignalEnsemble ensemble_from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  SignalEnsemble e;
  int n = -1, R = -1;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string token;
      while (hs >> token) {
        if (token.rfind("n=", 0) == 0) n = std::stoi(token.substr(2));
        else if (token.rfind("R=", 0) == 0) R = std::stoi(token.substr(2));
        else if (token.rfind("seed=", 0) == 0)
          e.seed = std::stoull(token.substr(5));
      }
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) row.push_back(std::stod(field));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("ragged ensemble CSV");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("ensemble CSV has no data");
  if (n >= 0 && n != static_cast<int>(rows.front().size()))
    throw std::invalid_argument("ensemble CSV header n does not match data");
  if (R >= 0 && R != static_cast<int>(rows.size()))
    throw std::invalid_argument("ensemble CSV header R does not match data");
  e.data.resize(static_cast<int>(rows.size()),
                static_cast<int>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t j = 0; j < rows[r].size(); ++j)
      e.data(static_cast<int>(r), static_cast<int>(j)) = rows[r][j];
  return e;
}

}  // namespace gcsa
