#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aha/cli/commands.hpp"
#include "aha/errors.hpp"

namespace {

using aha::cli::RunConfig;

struct Settings {
    std::string config_file;
    std::vector<std::string> overrides;  // key=value
    std::vector<std::pair<std::string, std::string>> flags;
};

// Registers --config, --set and one flag per config key.
void add_config_options(CLI::App* cmd, Settings& s) {
    cmd->add_option("-c,--config", s.config_file, "key = value config file")->check(CLI::ExistingFile);
    cmd->add_option("--set", s.overrides, "override a config key (key=value), repeatable");
    for (const auto& key : aha::cli::config_keys()) {
        cmd->add_option_function<std::string>(
            "--" + key, [&s, key](const std::string& v) { s.flags.emplace_back(key, v); },
            "config key " + key + " (default " + aha::cli::get_setting(RunConfig{}, key) + ")");
    }
}

// Defaults, then the config file, then --set, then per-key flags.
RunConfig resolve(const Settings& s) {
    RunConfig cfg;
    if (!s.config_file.empty())
        for (const auto& [k, v] : aha::cli::read_config_file(s.config_file)) aha::cli::apply_setting(cfg, k, v);
    for (const auto& o : s.overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw aha::InvalidArgument("--set expects key=value, got '" + o + "'");
        aha::cli::apply_setting(cfg, o.substr(0, eq), o.substr(eq + 1));
    }
    for (const auto& [k, v] : s.flags) aha::cli::apply_setting(cfg, k, v);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AHA episodic memory: pretraining, evaluation sweeps and plot export", "aha"};
    app.require_subcommand(1);

    Settings pretrain_settings;
    auto* pretrain = app.add_subcommand("pretrain", "train the vision component filters on the background split");
    add_config_options(pretrain, pretrain_settings);

    Settings evaluate_settings;
    auto* evaluate = app.add_subcommand("evaluate", "run the benchmark sweep on the evaluation split");
    add_config_options(evaluate, evaluate_settings);

    std::string csv;
    std::string plot_dir;
    auto* plots = app.add_subcommand("export-plots", "summarise a results CSV into per-curve plot tables");
    plots->add_option("csv", csv, "results.csv written by evaluate")->required();
    plots->add_option("-o,--out", plot_dir, "output directory (default: beside the CSV)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : aha::cli::kExitUsage;
    }

    try {
        if (pretrain->parsed()) return aha::cli::cmd_pretrain(resolve(pretrain_settings), std::cout, std::cerr);
        if (evaluate->parsed()) return aha::cli::cmd_evaluate(resolve(evaluate_settings), std::cout, std::cerr);
    } catch (const aha::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return aha::cli::kExitUsage;
    }
    const std::filesystem::path csv_path(csv);
    const std::filesystem::path out = plot_dir.empty() ? csv_path.parent_path() : std::filesystem::path(plot_dir);
    return aha::cli::cmd_export_plots(csv_path, out.empty() ? "." : out, std::cout, std::cerr);
}
