#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace gcsa {

/// Mixes a base seed with a stream index (splitmix64 finalizer). Used to
/// derive independent substreams per realization / window / trial so that
/// generation order never depends on evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seedable standard-normal stream: mt19937_64 (fully specified by the
/// standard) driving an explicit Box-Muller transform, so sequences are
/// reproducible across platforms up to libm rounding.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream)
      : engine_(mix_seed(seed, stream)) {}

  /// Uniform draw in (0, 1].
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal();

  Eigen::VectorXd normal_vector(int n);
  Eigen::MatrixXd normal_matrix(int rows, int cols);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gcsa
