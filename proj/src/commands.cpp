#include "isvd/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "isvd/errors.hpp"
#include "isvd/report.hpp"

namespace isvd {

namespace fs = std::filesystem;

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string format_name(MatrixFormat f) {
  switch (f) {
    case MatrixFormat::csv:
      return "csv";
    case MatrixFormat::tsv:
      return "tsv";
    case MatrixFormat::automatic:
      break;
  }
  return "auto";
}

std::vector<std::string> resolve_labels(const RunConfig& cfg) {
  if (!cfg.labels.empty()) {
    if (cfg.labels.size() != cfg.inputs.size()) {
      throw std::invalid_argument("label count does not match input count");
    }
    return cfg.labels;
  }
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
    std::string stem = fs::path(cfg.inputs[i]).stem().string();
    if (stem.empty() || !seen.insert(stem).second) {
      stem += "#" + std::to_string(i);
      seen.insert(stem);
    }
    labels.push_back(stem);
  }
  return labels;
}

void validate(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw std::invalid_argument("at least one input block is required");
  if (!(cfg.options.stop.value > 0.0)) throw std::invalid_argument("stop threshold must be positive");
  if (cfg.options.max_iters && *cfg.options.max_iters == 0) {
    throw std::invalid_argument("max iterations must be positive");
  }
  if (!(cfg.options.solver.tol > 0.0) || cfg.options.solver.max_iter == 0) {
    throw std::invalid_argument("solver tolerance and iteration cap must be positive");
  }
  if (cfg.report_path.empty()) throw std::invalid_argument("report path is required");
  cfg.options.detection.validate();
}

}  // namespace

int cmd_decompose(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::string> labels;
  try {
    validate(cfg);
    labels = resolve_labels(cfg);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::vector<DenseMatrix> blocks;
  try {
    for (const auto& path : cfg.inputs) blocks.push_back(load_matrix(path, cfg.format, cfg.header));
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  try {
    const BlockStack stack(std::move(blocks), labels);
    const IsvdReport report = run(stack, cfg.options);

    std::string inputs;
    for (std::size_t i = 0; i < cfg.inputs.size(); ++i) inputs += (i ? ";" : "") + cfg.inputs[i];
    std::string label_list;
    for (std::size_t i = 0; i < labels.size(); ++i) label_list += (i ? ";" : "") + labels[i];
    const ConfigEcho echo = {{"inputs", inputs},
                             {"labels", label_list},
                             {"input_format", format_name(cfg.format)},
                             {"header", cfg.header ? "true" : "false"}};

    write_text(cfg.report_path, format_report(report, stack, echo));
    if (!cfg.plot_path.empty()) write_text(cfg.plot_path, format_residual_table(report));

    log << "isvd: " << report.factors.size() << " factor(s), stop reason "
        << to_string(report.stop_reason) << '\n';
    if (report.stop_reason == StopReason::solver_failure) {
      log << "error: " << report.failure_message << '\n';
      return kExitSolver;
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

std::string truth_sidecar_json(const SyntheticSpec& spec, const PlantedTruth& truth,
                               const std::vector<std::string>& block_files) {
  nlohmann::ordered_json doc;
  if (const auto* t2 = std::get_if<Theorem2Spec>(&spec)) {
    doc["kind"] = "theorem2";
    doc["spec"] = {{"s1_rows_a1", t2->s1_rows_a1}, {"s2_rows_a1", t2->s2_rows_a1},
                   {"s1_rows_a2", t2->s1_rows_a2}, {"dim", t2->dim},
                   {"seed", t2->seed},             {"permute_rows", t2->permute_rows}};
  } else {
    const auto& t3 = std::get<Theorem3Spec>(spec);
    doc["kind"] = "theorem3";
    doc["spec"] = {{"signal_rows", t3.signal_rows}, {"total_rows", t3.total_rows},
                   {"dim", t3.dim},                 {"sigma", t3.sigma},
                   {"seed", t3.seed}};
  }
  doc["blocks"] = block_files;
  doc["eigenvalue_kind"] = truth.eigenvalue_kind == EigenvalueKind::exact ? "exact" : "approximate";
  doc["predicted_eigenvalues"] = truth.predicted_eigenvalues;
  doc["signals"] = truth.signals;
  doc["supports"] = truth.supports;
  return doc.dump(2) + "\n";
}

int cmd_synth(const SynthConfig& cfg, std::ostream& log) {
  std::vector<std::pair<std::string, DenseMatrix>> outputs;
  PlantedTruth truth;
  try {
    if (const auto* t2 = std::get_if<Theorem2Spec>(&cfg.spec)) {
      auto inst = gen_theorem2(*t2);
      outputs.emplace_back("A1.csv", inst.stack.block(0));
      outputs.emplace_back("A2.csv", inst.stack.block(1));
      truth = std::move(inst.truth);
    } else {
      auto inst = gen_theorem3(std::get<Theorem3Spec>(cfg.spec));
      outputs.emplace_back("A.csv", std::move(inst.matrix));
      truth = std::move(inst.truth);
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    std::vector<std::string> names;
    for (const auto& [name, m] : outputs) {
      save_matrix((dir / name).string(), m);
      names.push_back(name);
    }
    write_text((dir / "truth.json").string(), truth_sidecar_json(cfg.spec, truth, names));
    log << "isvd: wrote " << names.size() << " block(s) and truth.json to " << dir.string() << '\n';
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_roc(const RocConfig& cfg, std::ostream& log) {
  RocResult result;
  try {
    result = roc_sweep(cfg.grid, cfg.trials, cfg.seed, cfg.options);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  const ConfigEcho header = {
      {"signal_rows", std::to_string(cfg.grid.signal_rows)},
      {"total_rows", std::to_string(cfg.grid.total_rows)},
      {"dim", std::to_string(cfg.grid.dim)},
      {"trials", std::to_string(cfg.trials)},
      {"seed", std::to_string(cfg.seed)},
      {"sigma_mode", cfg.options.detection.sigma_mode == SigmaMode::fixed ? "fixed" : "mad_estimate"},
      {"threshold_scale", format_number(cfg.options.detection.threshold_scale)},
      {"solver_tol", format_number(cfg.options.solver.tol)},
      {"solver_max_iter", std::to_string(cfg.options.solver.max_iter)}};
  try {
    write_text(cfg.output_path, format_roc_table(result, header));
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  log << "isvd: " << result.points.size() << " ROC point(s) written to " << cfg.output_path << '\n';
  return kExitOk;
}

}  // namespace isvd
