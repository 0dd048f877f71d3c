#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aha/bench/experiment.hpp"

namespace aha::bench {

inline constexpr const char* kCsvHeader = "model,task,corruption,level,seed,run,accuracy,recall_loss";

/// Shortest text that parses back to the same double; "nan" for NaN.
std::string format_double(double v);

/// One row per record, run column "mean".
void write_results_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path);
/// One row per record and run, run column = run index.
void write_runs_csv(const std::vector<MetricsRecord>& records, const std::filesystem::path& path);

struct ResultRow {
    std::string model;
    std::string task;
    std::string corruption;
    double level = 0.0;
    std::uint64_t seed = 0;
    std::string run;
    double accuracy = 0.0;
    double recall_loss = 0.0;
};

/// Throws IngestionError naming the file and line on malformed input.
std::vector<ResultRow> read_results_csv(const std::filesystem::path& path);

struct Summary {
    double mean = 0.0;
    double std = 0.0;  // population
    double min = 0.0;
    double max = 0.0;
};

// NaN in, NaN out.
Summary summarise(const std::vector<double>& values);

struct PlotPoint {
    std::string model;
    double level = 0.0;
    int seeds = 0;
    Summary accuracy;
    Summary recall_loss;
};

/// Statistics across seeds per (model, level) for one task and corruption,
/// using the "mean" rows only.
std::vector<PlotPoint> plot_points(const std::vector<ResultRow>& rows, const std::string& task,
                                   const std::string& corruption);

/// Writes plot_<task>_<corruption>.tsv for every pair present in `rows`.
/// Returns the files written.
std::vector<std::filesystem::path> export_plots(const std::vector<ResultRow>& rows,
                                                const std::filesystem::path& out_dir);

}  // namespace aha::bench
