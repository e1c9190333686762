#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "gcsa/graph.hpp"

namespace gcsa {

/// Scalar frequency response h(lambda). Kernels flagged normalized_domain
/// are evaluated at lambda / lambda_max, i.e. they are defined on the
/// normalized frequency interval [0, 1]; raw kernels take lambda as-is.
class FilterKernel {
 public:
  /// `finite_check_upper` is the top of the interval sampled (1024 points)
  /// to verify the evaluator is finite. Normalized kernels check [0, 1].
  FilterKernel(std::string name, std::function<double(double)> evaluator,
               bool normalized_domain, double finite_check_upper = 1.0);

  /// Evaluates at a raw graph frequency, applying domain normalization.
  double operator()(double lambda, double lambda_max) const;

  const std::string& name() const { return name_; }
  bool normalized_domain() const { return normalized_domain_; }

 private:
  std::string name_;
  std::function<double(double)> evaluator_;
  bool normalized_domain_;
};

enum class BuiltinKernel { mex, heat, ds, high };

/// The four frequency responses used throughout the experiments, on the
/// normalized frequency domain [0, 1]:
///   mex  : 5 t exp(-25 t^2)
///   heat : exp(-10 t)
///   ds   : sin(15 t) exp(-5 t)
///   high : t exp(-t)
FilterKernel builtin_kernel(BuiltinKernel which);

/// Accepts "mex", "heat", "ds", "high", or "wft_gaussian(<sigma2>)".
FilterKernel builtin_kernel(const std::string& name);

/// g(lambda) = exp(-lambda^2 / sigma2), on the raw frequency axis.
FilterKernel wft_gaussian(double sigma2);

FilterKernel identity_kernel();
FilterKernel zero_kernel();

/// h(lambda_l) for every eigenvalue of the basis.
Eigen::VectorXd kernel_values(const FilterKernel& k, const SpectralBasis& basis);

/// V diag(h(lambda)) V^T x.
Eigen::VectorXd exact_filter(const SpectralBasis& basis, const FilterKernel& k,
                             const Eigen::VectorXd& x);

/// Dense filter matrix V diag(h(lambda)) V^T.
Eigen::MatrixXd filter_matrix(const SpectralBasis& basis, const FilterKernel& k);

/// diag(V^T H V): the frequency response of an arbitrary filter matrix.
Eigen::VectorXd frequency_response(const SpectralBasis& basis,
                                   const Eigen::MatrixXd& filter);

/// Default approximation order: keeps the grid error of the built-in
/// kernels below 1e-5 on every test graph.
inline constexpr int kDefaultChebyshevOrder = 30;

/// Chebyshev series on [0, lambda_max]. Convention: coeffs(0) is halved in
/// evaluation, i.e. h(lambda) ~ c0/2 + sum_{k>=1} ck Tk(t) with
/// t = 2 lambda / lambda_max - 1. The coefficients round-trip through the
/// filter JSON format unambiguously under this convention.
struct ChebyshevFilter {
  Eigen::VectorXd coeffs;
  double lambda_max = 0.0;
  int order = 0;
};

struct ChebyshevFit {
  ChebyshevFilter filter;
  /// max |series - kernel| on a 1024-point grid over [0, lambda_max].
  double grid_error = 0.0;
};

/// Chebyshev-Gauss quadrature at order+1 nodes.
ChebyshevFit chebyshev_fit(const FilterKernel& k, int order, double lambda_max);

double chebyshev_eval(const ChebyshevFilter& f, double lambda);

/// Matrix-free application via the three-term recurrence on the rescaled
/// operator; touches only entries within `order` hops of the input support.
Eigen::VectorXd chebyshev_apply(const ShiftOperator& s, const ChebyshevFilter& f,
                                const Eigen::VectorXd& x);

/// JSON: { "kind": "chebyshev", "order": L, "lambda_max": x, "coeffs": [...] }.
std::string filter_to_json(const ChebyshevFilter& f);
ChebyshevFilter filter_from_json(const std::string& json_text);

}  // namespace gcsa
