#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isvd/block_stack.hpp"
#include "isvd/decomposition.hpp"
#include "isvd/detection.hpp"

namespace isvd {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

/// Line-oriented `key = value` report with [config], [blocks], [result] and
/// one [factor k] section per factor. `extra_config` is echoed first in
/// [config], ahead of the resolved run options.
std::string format_report(const IsvdReport& report, const BlockStack& input,
                          const ConfigEcho& extra_config = {});

/// `iteration,residual_norm` CSV, one row per deflation.
std::string format_residual_table(const IsvdReport& report);

/// `snr,tpr,fpr,trials` CSV followed by a `# empirical_critical_snr,<value|none>` line.
std::string format_roc_table(const RocResult& result, const ConfigEcho& header = {});

}  // namespace isvd
