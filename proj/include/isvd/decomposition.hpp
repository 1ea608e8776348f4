#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isvd/block_stack.hpp"
#include "isvd/detection.hpp"
#include "isvd/linalg.hpp"

namespace isvd {

/// One rank-one extraction from the stacked residual.
///
/// Block i of the extracted piece is u_i · d_i · vᵀ, where u_i is the unit
/// detector of block i (zero when block i's share of the left vector is
/// zero), d_i its weight, and v = d · q the shared right signal.
struct IsvdFactor {
  std::size_t iteration = 0;  // 1-based
  double global_value = 0.0;
  Vector right_signal;
  Vector unit_right;
  BlockVector block_detectors;
  Vector block_weights;
  std::vector<std::vector<std::size_t>> supports;
  std::vector<std::optional<double>> block_thresholds;
  /// Noise estimate was zero, so any nonzero detector entry passed.
  std::vector<bool> block_zero_noise;
  /// Relative gap to the next singular value below 1e-6; the right vector is
  /// then not identifiable within the leading subspace.
  bool gap_below = false;
};

enum class StopReason { threshold_reached, max_iterations, rank_exhausted, solver_failure };

std::string_view to_string(StopReason reason);

struct StopThreshold {
  enum class Mode { absolute, relative };
  Mode mode = Mode::relative;
  double value = 1.4901161193847656e-08;  // √ε_mach, times the first singular value

  static StopThreshold absolute(double v) { return {Mode::absolute, v}; }
  static StopThreshold relative(double ratio) { return {Mode::relative, ratio}; }
};

struct IsvdOptions {
  StopThreshold stop;
  std::optional<std::size_t> max_iters;  // default min(Σm_i, n)
  DetectionConfig detection;
  SolverOptions solver;
  std::uint64_t seed = 0;
  bool reorthogonalize = false;
};

struct IsvdReport {
  std::vector<IsvdFactor> factors;
  /// Spectral norm of the residual after each deflation.
  Vector residual_norms;
  StopReason stop_reason = StopReason::threshold_reached;
  std::string failure_message;

  IsvdOptions options;
  double stop_threshold = 0.0;  // resolved absolute value
  std::size_t max_iters = 0;    // resolved
};

/// Splits a leading triple of `s` into per-block detectors and weights.
/// Supports are left empty.
IsvdFactor factor_from_triple(const BlockStack& s, const SingularTriple& triple,
                              std::size_t iteration = 1);

/// Leading rank-one factor of the stack. Throws ZeroMatrixError("zero stack")
/// for an all-zero stack; ConvergenceError propagates.
IsvdFactor rank_one_factor(const BlockStack& s, const SolverOptions& solver = {},
                           std::uint64_t seed = 0);

/// Fills supports and thresholds per block. Blocks with a zero detector or
/// fewer than two rows get an empty support and no threshold.
void detect_supports(IsvdFactor& factor, const DetectionConfig& cfg);

/// s minus the blockwise rank-one pieces of `factor`.
BlockStack deflate(const BlockStack& s, const IsvdFactor& factor);

/// Blockwise sum of u_ik · d_ik · v_kᵀ over the given factors.
BlockStack reconstruct(const BlockStack& shape, const std::vector<IsvdFactor>& factors);

/// Repeats factor → detect → deflate until the residual spectral norm is at or
/// below the stop threshold, the iteration cap is hit, or the residual is
/// numerically zero. A solver failure ends the run with the factors found so
/// far and StopReason::solver_failure.
IsvdReport run(const BlockStack& s, const IsvdOptions& options = {});

}  // namespace isvd
