#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gcsa {

enum class DensityKind { psd, csd, coherence };

std::string to_string(DensityKind kind);
DensityKind density_kind_from_string(const std::string& s);

/// A spectral density sampled on a frequency grid: eigenvalues for the
/// periodogram family, k*tau grid points for the windowed-Fourier estimator.
/// Values are complex-capable; with a real symmetric shift operator all
/// densities produced by this library are real.
struct SpectralDensity {
  Eigen::VectorXd frequencies;
  Eigen::VectorXcd values;
  DensityKind kind = DensityKind::csd;
  /// Per-entry flags set when a coherence value was clipped into [0, 1].
  std::vector<bool> clipped;

  int size() const { return static_cast<int>(frequencies.size()); }
  Eigen::VectorXd real_values() const { return values.real(); }
};

/// Throws if the kind-specific invariants are violated: psd values real and
/// >= -1e-10, coherence values within [-1e-10, 1 + 1e-10].
void validate_density(const SpectralDensity& d);

/// Throws unless both grids match exactly (same length and frequencies).
void require_same_grid(const SpectralDensity& a, const SpectralDensity& b);

/// JSON format: { "kind": "psd|csd|coherence", "frequencies": [...],
/// "re": [...], "im": [...] }. Doubles round-trip bit-exactly.
std::string density_to_json(const SpectralDensity& d);
SpectralDensity density_from_json(const std::string& json_text);

/// CSV twin with header `lambda,re,im`.
std::string density_to_csv(const SpectralDensity& d);
SpectralDensity density_from_csv(const std::string& csv_text);

}  // namespace gcsa
