#include "gcsa/filters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gcsa {

FilterKernel::FilterKernel(std::string name,
                           std::function<double(double)> evaluator,
                           bool normalized_domain, double finite_check_upper)
    : name_(std::move(name)),
      evaluator_(std::move(evaluator)),
      normalized_domain_(normalized_domain) {
  if (!evaluator_) throw std::invalid_argument("kernel evaluator is empty");
  const double upper = normalized_domain_ ? 1.0 : finite_check_upper;
  for (int i = 0; i < 1024; ++i) {
    const double t = upper * static_cast<double>(i) / 1023.0;
    if (!std::isfinite(evaluator_(t)))
      throw std::invalid_argument("kernel '" + name_ +
                                  "' is not finite at lambda = " +
                                  std::to_string(t));
  }
}

double FilterKernel::operator()(double lambda, double lambda_max) const {
  if (normalized_domain_) {
    if (!(lambda_max > 0.0))
      throw std::invalid_argument("lambda_max must be positive");
    return evaluator_(lambda / lambda_max);
  }
  return evaluator_(lambda);
}

FilterKernel builtin_kernel(BuiltinKernel which) {
  switch (which) {
    case BuiltinKernel::mex:
      return {"mex", [](double t) { return 5.0 * t * std::exp(-25.0 * t * t); },
              true};
    case BuiltinKernel::heat:
      return {"heat", [](double t) { return std::exp(-10.0 * t); }, true};
    case BuiltinKernel::ds:
      return {"ds",
              [](double t) { return std::sin(15.0 * t) * std::exp(-5.0 * t); },
              true};
    case BuiltinKernel::high:
      return {"high", [](double t) { return t * std::exp(-t); }, true};
  }
  throw std::invalid_argument("unknown builtin kernel");
}

FilterKernel builtin_kernel(const std::string& name) {
  if (name == "mex") return builtin_kernel(BuiltinKernel::mex);
  if (name == "heat") return builtin_kernel(BuiltinKernel::heat);
  if (name == "ds") return builtin_kernel(BuiltinKernel::ds);
  if (name == "high") return builtin_kernel(BuiltinKernel::high);
  if (name.rfind("wft_gaussian(", 0) == 0 && name.back() == ')') {
    const std::string arg = name.substr(13, name.size() - 14);
    return wft_gaussian(std::stod(arg));
  }
  throw std::invalid_argument("unknown kernel name: " + name);
}

FilterKernel wft_gaussian(double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("wft_gaussian requires sigma2 > 0");
  return {"wft_gaussian",
          [sigma2](double lam) { return std::exp(-lam * lam / sigma2); },
          /*normalized_domain=*/false,
          /*finite_check_upper=*/10.0 * std::sqrt(sigma2)};
}

FilterKernel identity_kernel() {
  return {"identity", [](double) { return 1.0; }, false};
}

FilterKernel zero_kernel() {
  return {"zero", [](double) { return 0.0; }, false};
}

Eigen::VectorXd kernel_values(const FilterKernel& k, const SpectralBasis& basis) {
  const double lmax = basis.lambda_max();
  Eigen::VectorXd h(basis.size());
  for (int i = 0; i < basis.size(); ++i) h(i) = k(basis.eigenvalues(i), lmax);
  return h;
}

Eigen::VectorXd exact_filter(const SpectralBasis& basis, const FilterKernel& k,
                             const Eigen::VectorXd& x) {
  if (x.size() != basis.size())
    throw std::invalid_argument("signal dimension mismatch");
  const Eigen::VectorXd h = kernel_values(k, basis);
  return basis.eigenvectors *
         (h.array() * (basis.eigenvectors.transpose() * x).array()).matrix();
}

Eigen::MatrixXd filter_matrix(const SpectralBasis& basis, const FilterKernel& k) {
  const Eigen::VectorXd h = kernel_values(k, basis);
  return basis.eigenvectors * h.asDiagonal() * basis.eigenvectors.transpose();
}

Eigen::VectorXd frequency_response(const SpectralBasis& basis,
                                   const Eigen::MatrixXd& filter) {
  if (filter.rows() != basis.size() || filter.cols() != basis.size())
    throw std::invalid_argument("filter matrix dimension mismatch");
  return (basis.eigenvectors.transpose() * filter * basis.eigenvectors)
      .diagonal();
}

ChebyshevFit chebyshev_fit(const FilterKernel& k, int order, double lambda_max) {
  if (order < 1) throw std::invalid_argument("chebyshev order must be >= 1");
  if (!(lambda_max > 0.0))
    throw std::invalid_argument("lambda_max must be positive");

  const int n = order + 1;
  Eigen::VectorXd values(n), theta(n);
  for (int j = 0; j < n; ++j) {
    theta(j) = std::numbers::pi * (j + 0.5) / n;
    const double lam = 0.5 * lambda_max * (std::cos(theta(j)) + 1.0);
    values(j) = k(lam, lambda_max);
  }
  ChebyshevFilter f;
  f.order = order;
  f.lambda_max = lambda_max;
  f.coeffs.resize(n);
  for (int c = 0; c < n; ++c) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += values(j) * std::cos(c * theta(j));
    f.coeffs(c) = 2.0 * acc / n;
  }

  double err = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double lam = lambda_max * static_cast<double>(i) / 1023.0;
    err = std::max(err, std::abs(chebyshev_eval(f, lam) - k(lam, lambda_max)));
  }
  return {std::move(f), err};
}

double chebyshev_eval(const ChebyshevFilter& f, double lambda) {
  const double t = 2.0 * lambda / f.lambda_max - 1.0;
  // Clenshaw recurrence with halved c0.
  double b1 = 0.0, b2 = 0.0;
  for (int c = static_cast<int>(f.coeffs.size()) - 1; c >= 1; --c) {
    const double b0 = 2.0 * t * b1 - b2 + f.coeffs(c);
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + 0.5 * f.coeffs(0);
}

Eigen::VectorXd chebyshev_apply(const ShiftOperator& s, const ChebyshevFilter& f,
                                const Eigen::VectorXd& x) {
  const auto n = s.matrix.rows();
  if (x.size() != n) throw std::invalid_argument("signal dimension mismatch");
  // Affine rescale of the operator to [-1, 1]: S' = 2 S / lambda_max - I.
  const double a = 2.0 / f.lambda_max;
  auto shifted = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return a * (s.matrix * v) - v;
  };
  Eigen::VectorXd prev = x;             // T0 x
  Eigen::VectorXd curr = shifted(x);    // T1 x
  Eigen::VectorXd acc = 0.5 * f.coeffs(0) * prev;
  if (f.coeffs.size() > 1) acc += f.coeffs(1) * curr;
  for (int c = 2; c < f.coeffs.size(); ++c) {
    Eigen::VectorXd next = 2.0 * shifted(curr) - prev;
    acc += f.coeffs(c) * next;
    prev = std::move(curr);
    curr = std::move(next);
  }
  return acc;
}

std::string filter_to_json(const ChebyshevFilter& f) {
  nlohmann::json j;
  j["kind"] = "chebyshev";
  j["order"] = f.order;
  j["lambda_max"] = f.lambda_max;
  auto coeffs = nlohmann::json::array();
  for (int i = 0; i < f.coeffs.size(); ++i) coeffs.push_back(f.coeffs(i));
  j["coeffs"] = std::move(coeffs);
  return j.dump();
}

ChebyshevFilter filter_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (j.at("kind").get<std::string>() != "chebyshev")
    throw std::invalid_argument("not a chebyshev filter JSON");
  ChebyshevFilter f;
  f.order = j.at("order").get<int>();
  f.lambda_max = j.at("lambda_max").get<double>();
  const auto& coeffs = j.at("coeffs");
  f.coeffs.resize(static_cast<int>(coeffs.size()));
  for (int i = 0; i < f.coeffs.size(); ++i) f.coeffs(i) = coeffs[i].get<double>();
  if (f.coeffs.size() != f.order + 1)
    throw std::invalid_argument("chebyshev coefficient count != order + 1");
  return f;
}

}  // namespace gcsa
