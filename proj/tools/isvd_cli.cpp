// isvd: joint rank-one decomposition of stacked matrices with support detection.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isvd/commands.hpp"

namespace {

struct DetectionFlags {
  std::optional<double> fixed_sigma;
  double threshold_scale = 1.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--sigma", fixed_sigma,
                    "Fixed noise sigma for the universal threshold (default: MAD estimate)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threshold-scale", threshold_scale, "Multiplier on the universal threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  isvd::DetectionConfig config() const {
    isvd::DetectionConfig cfg;
    cfg.threshold_scale = threshold_scale;
    if (fixed_sigma) {
      cfg.sigma_mode = isvd::SigmaMode::fixed;
      cfg.sigma = *fixed_sigma;
    }
    return cfg;
  }
};

isvd::MatrixFormat parse_format(const std::string& s) {
  if (s == "csv") return isvd::MatrixFormat::csv;
  if (s == "tsv") return isvd::MatrixFormat::tsv;
  return isvd::MatrixFormat::automatic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative rank-one decomposition of stacked matrices with support detection"};
  app.require_subcommand(1);

  // decompose
  isvd::RunConfig run_cfg;
  std::string format = "auto";
  std::optional<double> abs_threshold;
  std::optional<double> rel_threshold;
  std::optional<std::size_t> max_iters;
  DetectionFlags run_detection;
  auto* decompose = app.add_subcommand("decompose", "Decompose a stack of matrix files");
  decompose->add_option("inputs", run_cfg.inputs, "Block files (CSV/TSV), in stacking order")
      ->required();
  decompose->add_option("--label", run_cfg.labels, "Block labels, one per input");
  decompose->add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"auto", "csv", "tsv"}))
      ->capture_default_str();
  decompose->add_flag("--header", run_cfg.header, "Skip one header row in each input");
  auto* abs_opt = decompose->add_option("--threshold", abs_threshold,
                                        "Absolute stop threshold on the residual spectral norm")
                      ->check(CLI::PositiveNumber);
  decompose
      ->add_option("--relative-threshold", rel_threshold,
                   "Stop threshold as a fraction of the first singular value (default sqrt(eps))")
      ->check(CLI::PositiveNumber)
      ->excludes(abs_opt);
  decompose->add_option("--max-iters", max_iters, "Iteration cap (default min(total rows, cols))")
      ->check(CLI::PositiveNumber);
  decompose->add_option("--tol", run_cfg.options.solver.tol, "Power iteration tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  decompose->add_option("--solver-max-iter", run_cfg.options.solver.max_iter,
                        "Power iteration cap per factor")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  decompose->add_option("--seed", run_cfg.options.seed, "Random seed")->capture_default_str();
  decompose->add_flag("--reorthogonalize", run_cfg.options.reorthogonalize,
                      "Project each right vector against earlier ones");
  decompose->add_option("--report", run_cfg.report_path, "Report output path")->capture_default_str();
  decompose->add_option("--plot-data", run_cfg.plot_path, "Residual CSV output path")
      ->capture_default_str();
  run_detection.add_to(decompose);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate planted-signal matrices with ground truth");
  synth->require_subcommand(1);
  std::string out_dir = ".";
  std::uint64_t synth_seed = 0;
  synth->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Random seed")->required();

  isvd::Theorem2Spec t2;
  auto* synth2 = synth->add_subcommand("theorem2", "Two orthonormal signals in two blocks");
  synth2->add_option("--s1-rows-a1", t2.s1_rows_a1, "Copies of s1 in block A1")
      ->required()
      ->check(CLI::PositiveNumber);
  synth2->add_option("--s2-rows-a1", t2.s2_rows_a1, "Copies of s2 in block A1")
      ->required()
      ->check(CLI::PositiveNumber);
  synth2->add_option("--s1-rows-a2", t2.s1_rows_a2, "Copies of s1 in block A2")
      ->required()
      ->check(CLI::PositiveNumber);
  synth2->add_option("--dim", t2.dim, "Signal length")->required();
  synth2->add_flag("--permute-rows", t2.permute_rows, "Shuffle the rows of A1");

  isvd::Theorem3Spec t3;
  auto* synth3 = synth->add_subcommand("theorem3", "One signal in noise");
  synth3->add_option("--signal-rows", t3.signal_rows, "Rows carrying the signal")->required();
  synth3->add_option("--total-rows", t3.total_rows, "Total rows")->required();
  synth3->add_option("--dim", t3.dim, "Signal length")->required();
  synth3->add_option("--sigma", t3.sigma, "Noise standard deviation")
      ->required()
      ->check(CLI::PositiveNumber);

  // roc
  isvd::RocConfig roc_cfg;
  DetectionFlags roc_detection;
  auto* roc = app.add_subcommand("roc", "Monte Carlo detection rates over a noise grid");
  roc->add_option("--signal-rows", roc_cfg.grid.signal_rows, "Rows carrying the signal")->required();
  roc->add_option("--total-rows", roc_cfg.grid.total_rows, "Total rows")->required();
  roc->add_option("--dim", roc_cfg.grid.dim, "Signal length")->required();
  roc->add_option("--noise-sigma", roc_cfg.grid.sigmas, "Noise levels to sweep")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  roc->add_option("--trials", roc_cfg.trials, "Trials per noise level")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  roc->add_option("--seed", roc_cfg.seed, "Random seed")->required();
  roc->add_option("--tol", roc_cfg.options.solver.tol, "Power iteration tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  roc->add_option("--solver-max-iter", roc_cfg.options.solver.max_iter,
                  "Power iteration cap per trial")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  roc->add_option("--output", roc_cfg.output_path, "ROC table output path")->capture_default_str();
  roc_detection.add_to(roc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // --help and --version exit 0; every other parse failure is a usage error.
    return code == 0 ? isvd::kExitOk : isvd::kExitUsage;
  }

  if (*decompose) {
    run_cfg.format = parse_format(format);
    run_cfg.options.max_iters = max_iters;
    run_cfg.options.detection = run_detection.config();
    if (abs_threshold) {
      run_cfg.options.stop = isvd::StopThreshold::absolute(*abs_threshold);
    } else if (rel_threshold) {
      run_cfg.options.stop = isvd::StopThreshold::relative(*rel_threshold);
    }
    return isvd::cmd_decompose(run_cfg, std::cerr);
  }
  if (*synth) {
    isvd::SynthConfig cfg;
    cfg.out_dir = out_dir;
    if (*synth2) {
      t2.seed = synth_seed;
      cfg.spec = t2;
    } else {
      t3.seed = synth_seed;
      cfg.spec = t3;
    }
    return isvd::cmd_synth(cfg, std::cerr);
  }
  roc_cfg.options.detection = roc_detection.config();
  return isvd::cmd_roc(roc_cfg, std::cerr);
}
