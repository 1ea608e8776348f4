#include "isvd/report.hpp"

#include <sstream>

#include "isvd/matrix_io.hpp"

namespace isvd {

namespace {

std::string join_numbers(const Vector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_number(v[i]);
  }
  return out;
}

std::string join_indices(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_report(const IsvdReport& report, const BlockStack& input,
                          const ConfigEcho& extra_config) {
  const IsvdOptions& opt = report.options;
  std::ostringstream out;
  out << "# isvd decomposition report\n"
      << "# support indices are 0-based row numbers within each block\n"
      << "format = isvd-report/1\n\n";

  out << "[config]\n";
  for (const auto& [k, v] : extra_config) out << k << " = " << v << '\n';
  out << "stop_threshold_mode = "
      << (opt.stop.mode == StopThreshold::Mode::absolute ? "absolute" : "relative") << '\n'
      << "stop_threshold_value = " << format_number(opt.stop.value) << '\n'
      << "stop_threshold = " << format_number(report.stop_threshold) << '\n'
      << "max_iters = " << report.max_iters << '\n'
      << "solver_tol = " << format_number(opt.solver.tol) << '\n'
      << "solver_max_iter = " << opt.solver.max_iter << '\n'
      << "seed = " << opt.seed << '\n'
      << "sigma_mode = "
      << (opt.detection.sigma_mode == SigmaMode::fixed ? "fixed" : "mad_estimate") << '\n';
  if (opt.detection.sigma_mode == SigmaMode::fixed) {
    out << "sigma = " << format_number(opt.detection.sigma) << '\n';
  }
  out << "threshold_scale = " << format_number(opt.detection.threshold_scale) << '\n'
      << "reorthogonalize = " << bool_text(opt.reorthogonalize) << "\n\n";

  out << "[blocks]\n";
  for (std::size_t i = 0; i < input.num_blocks(); ++i) {
    out << input.labels()[i] << " = " << input.block(i).rows() << 'x' << input.cols() << '\n';
  }
  out << '\n';

  out << "[result]\n"
      << "stop_reason = " << to_string(report.stop_reason) << '\n';
  if (!report.failure_message.empty()) out << "failure = " << report.failure_message << '\n';
  out << "factors = " << report.factors.size() << '\n';

  for (std::size_t k = 0; k < report.factors.size(); ++k) {
    const IsvdFactor& f = report.factors[k];
    out << "\n[factor " << f.iteration << "]\n"
        << "global_value = " << format_number(f.global_value) << '\n'
        << "gap_below = " << bool_text(f.gap_below) << '\n';
    if (k < report.residual_norms.size()) {
      out << "residual_norm = " << format_number(report.residual_norms[k]) << '\n';
    }
    out << "unit_right = " << join_numbers(f.unit_right) << '\n';
    for (std::size_t i = 0; i < f.block_weights.size(); ++i) {
      const std::string& label = input.labels()[i];
      out << label << ".weight = " << format_number(f.block_weights[i]) << '\n'
          << label << ".threshold = "
          << (f.block_thresholds[i] ? format_number(*f.block_thresholds[i]) : "none") << '\n'
          << (f.block_zero_noise[i] ? label + ".warning = zero_noise_estimate\n" : std::string())
          << label << ".support =" << (f.supports[i].empty() ? "" : " ")
          << join_indices(f.supports[i]) << '\n';
    }
  }
  return out.str();
}

std::string format_residual_table(const IsvdReport& report) {
  std::string out = "iteration,residual_norm\n";
  for (std::size_t k = 0; k < report.residual_norms.size(); ++k) {
    out += std::to_string(k + 1) + ',' + format_number(report.residual_norms[k]) + '\n';
  }
  return out;
}

std::string format_roc_table(const RocResult& result, const ConfigEcho& header) {
  std::string out;
  for (const auto& [k, v] : header) out += "# " + k + " = " + v + '\n';
  out += "snr,tpr,fpr,trials\n";
  for (const auto& p : result.points) {
    out += format_number(p.snr) + ',' + format_number(p.true_positive_rate) + ',' +
           format_number(p.false_positive_rate) + ',' + std::to_string(p.trials) + '\n';
  }
  out += "# empirical_critical_snr,";
  out += result.critical_snr ? format_number(*result.critical_snr) : "none";
  out += '\n';
  return out;
}

}  // namespace isvd
