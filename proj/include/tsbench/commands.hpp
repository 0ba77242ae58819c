#pragma once

#include <iosfwd>

#include "tsbench/config.hpp"

namespace tsbench {

/// Subcommand bodies. They throw on failure; the CLI entry point maps
/// exception categories onto exit codes (0 ok, 1 internal, 2 usage/data).

/// Writes <out>/stats.csv: per-ticker train/test summary statistics.
void cmd_stats(const RunConfig& config, std::ostream& log);

/// Writes one <out>/lag_<ticker>_k<k>.csv per ticker and logs r_k.
void cmd_lagplot(const RunConfig& config, int lag, std::ostream& log);

/// Full benchmark: ingest, split, fit, walk forward, metrics. Writes
/// <out>/report.csv plus one trace CSV per (ticker, model) cell and logs an
/// aligned error table. Nothing is written unless every cell succeeds.
void cmd_bench(const RunConfig& config, std::ostream& log);

/// Downloads each configured ticker through the URL template into data_dir
/// (validating that the body parses before writing).
void cmd_fetch(const RunConfig& config, std::ostream& log);

}  // namespace tsbench
