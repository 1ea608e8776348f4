#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "isvd/linalg.hpp"

namespace isvd {

enum class SigmaMode { mad_estimate, fixed };

struct DetectionConfig {
  SigmaMode sigma_mode = SigmaMode::mad_estimate;
  double sigma = 1.0;  // used in fixed mode only
  double threshold_scale = 1.0;

  static DetectionConfig fixed_sigma(double sigma, double scale = 1.0) {
    return {SigmaMode::fixed, sigma, scale};
  }

  /// Throws std::invalid_argument for a non-positive sigma (fixed mode) or scale.
  void validate() const;
};

struct UniversalThreshold {
  double tau = 0.0;
  double sigma_hat = 0.0;
  bool zero_noise = false;  // σ̂ == 0, so every nonzero entry passes
};

/// median(|u − median(u)|) / 0.6745
double mad_sigma(std::span<const double> u);

/// τ = scale · σ̂ · √(2 ln m) with σ̂ fixed or MAD-estimated from u.
/// Throws std::invalid_argument for vectors shorter than 2 ("degenerate vector").
UniversalThreshold universal_threshold(std::span<const double> u, const DetectionConfig& cfg);

/// Indices with |u_i| > tau, ascending. Ties at tau are excluded.
std::vector<std::size_t> detect_support(std::span<const double> u, double tau);

struct RocPoint {
  double snr = 0.0;  // ⟨s,s⟩ / σ² with unit s
  double true_positive_rate = 0.0;
  double false_positive_rate = 0.0;
  std::size_t trials = 0;
};

/// Planted single-signal instances (signal_rows of total_rows carry s, dim
/// columns) swept over noise levels.
struct RocGrid {
  std::size_t signal_rows = 0;
  std::size_t total_rows = 0;
  std::size_t dim = 0;
  std::vector<double> sigmas;
};

struct RocOptions {
  DetectionConfig detection;
  SolverOptions solver{1e-8, 100000};
  double critical_tpr = 0.95;
  double critical_fpr = 0.05;
};

struct RocResult {
  std::vector<RocPoint> points;  // ascending SNR
  /// Smallest swept SNR with TPR ≥ critical_tpr and FPR ≤ critical_fpr.
  std::optional<double> critical_snr;
};

/// Monte Carlo ROC. Trial t uses the same derived seed at every noise level,
/// so points are paired across SNR.
RocResult roc_sweep(const RocGrid& grid, std::size_t trials, std::uint64_t seed,
                    const RocOptions& options = {});

}  // namespace isvd
