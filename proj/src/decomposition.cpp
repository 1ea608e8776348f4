#include "isvd/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "isvd/errors.hpp"
#include "isvd/random.hpp"

namespace isvd {

namespace {

constexpr double kGapFlag = 1e-6;

// Residuals whose Frobenius norm is below this multiple of ε · max(Σm, n) · d_1
// are treated as exact zeros left over from rounding.
constexpr double kRankSlack = 16.0;

// Projects q against earlier right vectors and rebuilds (p, d) from the stack.
SingularTriple reorthogonalized(const BlockStack& s, SingularTriple t,
                                const std::vector<IsvdFactor>& previous) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& f : previous) {
      const double c = dot(t.right, f.unit_right);
      for (std::size_t j = 0; j < t.right.size(); ++j) t.right[j] -= c * f.unit_right[j];
    }
  }
  const double nq = norm2(t.right);
  if (nq == 0.0) return t;
  for (auto& v : t.right) v /= nq;
  Vector p = multiply(s, t.right).join();
  const double d = norm2(p);
  if (d == 0.0) return t;
  for (auto& v : p) v /= d;
  t.left = std::move(p);
  t.value = d;
  return t;
}

// Spectral norm of a residual already known to satisfy the stopping rule by its
// Frobenius norm. Falls back to the Frobenius bound if power iteration stalls,
// which happens on rounding-level residuals with no spectral gap.
double certified_norm(const BlockStack& r, double frobenius, const SolverOptions& solver,
                      std::uint64_t seed) {
  if (r.is_zero()) return 0.0;
  try {
    return std::min(leading_triple(r, solver, seed).value, frobenius);
  } catch (const ConvergenceError&) {
    return frobenius;
  }
}

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::threshold_reached:
      return "threshold_reached";
    case StopReason::max_iterations:
      return "max_iterations";
    case StopReason::rank_exhausted:
      return "rank_exhausted";
    case StopReason::solver_failure:
      return "solver_failure";
  }
  return "unknown";
}

IsvdFactor factor_from_triple(const BlockStack& s, const SingularTriple& triple,
                              std::size_t iteration) {
  IsvdFactor f;
  f.iteration = iteration;
  f.global_value = triple.value;
  f.unit_right = triple.right;
  f.right_signal = triple.right;
  for (auto& v : f.right_signal) v *= triple.value;

  f.block_detectors = split(s, triple.left);
  f.block_weights.resize(s.num_blocks());
  for (std::size_t i = 0; i < s.num_blocks(); ++i) {
    Vector& u = f.block_detectors[i];
    const double w = norm2(u);
    f.block_weights[i] = w;
    if (w == 0.0) {
      std::fill(u.begin(), u.end(), 0.0);
    } else {
      for (auto& v : u) v /= w;
    }
  }
  f.supports.assign(s.num_blocks(), {});
  f.block_thresholds.assign(s.num_blocks(), std::nullopt);
  f.block_zero_noise.assign(s.num_blocks(), false);
  return f;
}

IsvdFactor rank_one_factor(const BlockStack& s, const SolverOptions& solver, std::uint64_t seed) {
  if (s.is_zero()) throw ZeroMatrixError("zero stack");
  return factor_from_triple(s, leading_triple(s, solver, seed));
}

void detect_supports(IsvdFactor& factor, const DetectionConfig& cfg) {
  cfg.validate();
  const std::size_t n = factor.block_detectors.size();
  factor.supports.assign(n, {});
  factor.block_thresholds.assign(n, std::nullopt);
  factor.block_zero_noise.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Vector& u = factor.block_detectors[i];
    if (factor.block_weights[i] == 0.0 || u.size() < 2) continue;
    const auto t = universal_threshold(u, cfg);
    factor.block_thresholds[i] = t.tau;
    factor.block_zero_noise[i] = t.zero_noise;
    factor.supports[i] = detect_support(u, t.tau);
  }
}

BlockStack deflate(const BlockStack& s, const IsvdFactor& factor) {
  return subtract_rank_one(s, factor.block_detectors, factor.block_weights, factor.right_signal);
}

BlockStack reconstruct(const BlockStack& shape, const std::vector<IsvdFactor>& factors) {
  std::vector<DenseMatrix> blocks;
  for (const auto& b : shape.blocks()) blocks.push_back(DenseMatrix::zeros(b.rows(), b.cols()));
  BlockStack acc(std::move(blocks), shape.labels());
  for (const auto& f : factors) {
    Vector neg = f.right_signal;
    for (auto& v : neg) v = -v;
    acc = subtract_rank_one(acc, f.block_detectors, f.block_weights, neg);
  }
  return acc;
}

IsvdReport run(const BlockStack& s, const IsvdOptions& options) {
  if (!(options.stop.value > 0.0)) throw std::invalid_argument("stop threshold must be positive");
  options.detection.validate();

  IsvdReport report;
  report.options = options;
  const std::size_t rank_bound = std::min(s.total_rows(), s.cols());
  report.max_iters = options.max_iters.value_or(rank_bound);
  if (report.max_iters == 0) throw std::invalid_argument("max_iters must be positive");
  report.stop_threshold =
      options.stop.mode == StopThreshold::Mode::absolute ? options.stop.value : 0.0;

  if (s.is_zero()) {
    report.stop_reason = StopReason::threshold_reached;
    return report;
  }

  SingularTriple triple;
  try {
    triple = leading_triple(s, options.solver, derive_seed(options.seed, 0));
  } catch (const ConvergenceError& e) {
    report.stop_reason = StopReason::solver_failure;
    report.failure_message = std::string("iteration 1: ") + e.what();
    return report;
  }

  const double first_value = triple.value;
  if (options.stop.mode == StopThreshold::Mode::relative) {
    report.stop_threshold = options.stop.value * first_value;
  }
  if (first_value <= report.stop_threshold) {
    report.stop_reason = StopReason::threshold_reached;
    return report;
  }
  const double zero_level = kRankSlack * std::numeric_limits<double>::epsilon() *
                            static_cast<double>(std::max(s.total_rows(), s.cols())) * first_value;

  BlockStack residual = s;
  for (std::size_t k = 1;; ++k) {
    if (options.reorthogonalize && !report.factors.empty()) {
      triple = reorthogonalized(residual, std::move(triple), report.factors);
    }
    IsvdFactor factor = factor_from_triple(residual, triple, k);
    detect_supports(factor, options.detection);
    residual = deflate(residual, factor);
    report.factors.push_back(std::move(factor));
    IsvdFactor& current = report.factors.back();

    const double frob = residual.frobenius_norm();
    const std::uint64_t seed = derive_seed(options.seed, k);
    double norm = 0.0;
    bool have_next = false;
    if (frob <= report.stop_threshold || frob <= zero_level) {
      norm = certified_norm(residual, frob, options.solver, seed);
    } else {
      try {
        triple = leading_triple(residual, options.solver, seed);
        norm = triple.value;
        have_next = true;
      } catch (const ConvergenceError& e) {
        report.residual_norms.push_back(e.last_iterate().value);
        report.stop_reason = StopReason::solver_failure;
        report.failure_message = "iteration " + std::to_string(k + 1) + ": " + e.what();
        return report;
      }
    }
    report.residual_norms.push_back(norm);
    current.gap_below = (current.global_value - norm) < kGapFlag * current.global_value;

    if (norm <= report.stop_threshold) {
      report.stop_reason = StopReason::threshold_reached;
      break;
    }
    if (!have_next || k >= rank_bound) {
      report.stop_reason = StopReason::rank_exhausted;
      break;
    }
    if (k >= report.max_iters) {
      report.stop_reason = StopReason::max_iterations;
      break;
    }
  }
  return report;
}

}  // namespace isvd
