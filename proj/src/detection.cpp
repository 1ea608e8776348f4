#include "isvd/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isvd/block_stack.hpp"
#include "isvd/decomposition.hpp"
#include "isvd/random.hpp"
#include "isvd/synthesis.hpp"

namespace isvd {

namespace {

// Normal consistency constant: MAD of N(0, 1) is Φ⁻¹(3/4).
constexpr double kMadScale = 0.6745;

double median_in_place(std::vector<double>& v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

void DetectionConfig::validate() const {
  if (sigma_mode == SigmaMode::fixed && !(sigma > 0.0)) {
    throw std::invalid_argument("fixed sigma must be positive");
  }
  if (!(threshold_scale > 0.0)) throw std::invalid_argument("threshold scale must be positive");
}

double mad_sigma(std::span<const double> u) {
  if (u.empty()) throw std::invalid_argument("degenerate vector");
  std::vector<double> work(u.begin(), u.end());
  const double med = median_in_place(work);
  for (std::size_t i = 0; i < u.size(); ++i) work[i] = std::abs(u[i] - med);
  return median_in_place(work) / kMadScale;
}

UniversalThreshold universal_threshold(std::span<const double> u, const DetectionConfig& cfg) {
  cfg.validate();
  if (u.size() < 2) throw std::invalid_argument("degenerate vector");
  UniversalThreshold out;
  out.sigma_hat = cfg.sigma_mode == SigmaMode::fixed ? cfg.sigma : mad_sigma(u);
  out.zero_noise = out.sigma_hat == 0.0;
  out.tau = cfg.threshold_scale * out.sigma_hat *
            std::sqrt(2.0 * std::log(static_cast<double>(u.size())));
  return out;
}

std::vector<std::size_t> detect_support(std::span<const double> u, double tau) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > tau) out.push_back(i);
  }
  return out;
}

RocResult roc_sweep(const RocGrid& grid, std::size_t trials, std::uint64_t seed,
                    const RocOptions& options) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (grid.sigmas.empty()) throw std::invalid_argument("noise grid is empty");
  options.detection.validate();

  std::vector<double> sigmas = grid.sigmas;
  // Descending σ is ascending SNR.
  std::sort(sigmas.begin(), sigmas.end(), std::greater<>());

  const std::size_t noise_rows = grid.total_rows - std::min(grid.signal_rows, grid.total_rows);
  RocResult result;
  for (double sigma : sigmas) {
    double tpr_sum = 0.0;
    double fpr_sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const Theorem3Spec spec{grid.signal_rows, grid.total_rows, grid.dim, sigma,
                              derive_seed(seed, t)};
      auto inst = gen_theorem3(spec);
      const BlockStack stack({std::move(inst.matrix)});
      IsvdFactor f = rank_one_factor(stack, options.solver, derive_seed(spec.seed, 1));
      detect_supports(f, options.detection);

      std::size_t hits = 0;
      for (std::size_t row : f.supports[0]) hits += row < grid.signal_rows ? 1 : 0;
      const std::size_t false_hits = f.supports[0].size() - hits;
      tpr_sum += static_cast<double>(hits) / static_cast<double>(grid.signal_rows);
      if (noise_rows > 0) fpr_sum += static_cast<double>(false_hits) / static_cast<double>(noise_rows);
    }
    RocPoint pt;
    pt.snr = 1.0 / (sigma * sigma);
    pt.true_positive_rate = tpr_sum / static_cast<double>(trials);
    pt.false_positive_rate = fpr_sum / static_cast<double>(trials);
    pt.trials = trials;
    result.points.push_back(pt);
  }
  for (const auto& pt : result.points) {
    if (pt.true_positive_rate >= options.critical_tpr &&
        pt.false_positive_rate <= options.critical_fpr) {
      result.critical_snr = pt.snr;
      break;
    }
  }
  return result;
}

}  // namespace isvd
