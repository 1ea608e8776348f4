#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "isvd/decomposition.hpp"
#include "isvd/detection.hpp"
#include "isvd/matrix_io.hpp"
#include "isvd/synthesis.hpp"

namespace isvd {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O or parse failure
inline constexpr int kExitUsage = 2;    // invalid parameters
inline constexpr int kExitSolver = 3;   // solver failure, partial report written

struct RunConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> labels;  // defaults to input file stems
  MatrixFormat format = MatrixFormat::automatic;
  bool header = false;
  IsvdOptions options;
  std::string report_path = "isvd_report.txt";
  std::string plot_path = "isvd_residuals.csv";  // empty: not written
};

/// Loads the blocks, runs the decomposition and writes the report and the
/// residual table. Diagnostics go to `log`.
int cmd_decompose(const RunConfig& cfg, std::ostream& log);

struct SynthConfig {
  SyntheticSpec spec;
  std::string out_dir = ".";
};

/// Writes the generated block CSVs plus `truth.json` into out_dir.
int cmd_synth(const SynthConfig& cfg, std::ostream& log);

struct RocConfig {
  RocGrid grid;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  RocOptions options;
  std::string output_path = "isvd_roc.csv";
};

int cmd_roc(const RocConfig& cfg, std::ostream& log);

/// Ground-truth sidecar document for a synthetic instance.
std::string truth_sidecar_json(const SyntheticSpec& spec, const PlantedTruth& truth,
                               const std::vector<std::string>& block_files);

}  // namespace isvd
