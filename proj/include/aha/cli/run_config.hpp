#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "aha/bench/experiment.hpp"

namespace aha::cli {

/// Everything a command needs. Defaults are the reported hyperparameters.
struct RunConfig {
    std::filesystem::path dataset_root;
    std::filesystem::path filters_path = "filters.ahaf";
    std::filesystem::path out_dir = "results";
    std::uint64_t pretrain_seed = 0;
    int pretrain_held_out = 256;
    bench::ExperimentConfig experiment = default_experiment();

    static bench::ExperimentConfig default_experiment();
};

/// Reads `key = value` lines; blank lines and lines starting with '#' are
/// skipped. Throws InvalidArgument naming the file and line.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// Throws InvalidArgument for an unknown key or a value that does not parse
/// or is out of range.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Every recognised key, in the order they are written.
std::vector<std::string> config_keys();
std::string get_setting(const RunConfig& cfg, const std::string& key);

/// All keys with their resolved values; feeding the text back through
/// read_config_file/apply_setting reproduces `cfg` exactly.
std::string effective_config(const RunConfig& cfg);
void write_effective_config(const RunConfig& cfg, const std::filesystem::path& path);

/// Checks cross-key constraints (e.g. k below units, non-empty lists).
void validate(const RunConfig& cfg);

}  // namespace aha::cli
