#pragma once

#include <filesystem>
#include <ostream>

#include "aha/cli/run_config.hpp"

namespace aha::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

/// Trains filters on the background split, writes them to cfg.filters_path
/// with the effective config beside them (<filters>.config).
int cmd_pretrain(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Runs the sweep on the evaluation split. Writes config.txt, results.csv and
/// runs.csv under cfg.out_dir, prints one line per finished cell and a clean
/// accuracy table. Exits 0 when at least one cell succeeded.
int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Writes plot_<task>_<corruption>.tsv files from a results CSV.
int cmd_export_plots(const std::filesystem::path& csv, const std::filesystem::path& out_dir, std::ostream& out,
                     std::ostream& err);

}  // namespace aha::cli
