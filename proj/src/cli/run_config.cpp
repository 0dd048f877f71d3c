#include "aha/cli/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

#include "aha/bench/results_io.hpp"
#include "aha/errors.hpp"

namespace aha::cli {

namespace {

using bench::CorruptionKind;
using bench::Task;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
    T v{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw InvalidArgument("bad value for " + key + ": '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InvalidArgument("bad value for " + key + ": '" + value + "' (expected true or false)");
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F format) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + format(items[i]);
    return out;
}

struct Key {
    std::string name;
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename T, typename Access>
Key number_key(std::string name, Access access) {
    return {std::move(name),
            [access](RunConfig& c, const std::string& k, const std::string& v) { access(c) = parse_number<T>(k, v); },
            [access](const RunConfig& c) {
                if constexpr (std::is_floating_point_v<T>) {
                    return bench::format_double(access(c));
                } else {
                    return std::to_string(access(c));
                }
            }};
}

template <typename Access>
Key bool_key(std::string name, Access access) {
    return {std::move(name),
            [access](RunConfig& c, const std::string& k, const std::string& v) { access(c) = parse_bool(k, v); },
            [access](const RunConfig& c) { return access(c) ? "true" : "false"; }};
}

template <typename Access>
Key path_key(std::string name, Access access) {
    return {std::move(name), [access](RunConfig& c, const std::string&, const std::string& v) { access(c) = v; },
            [access](const RunConfig& c) { return access(c).string(); }};
}

#define AHA_FIELD(expr) [](auto& c) -> auto& { return expr; }

const std::vector<Key>& registry() {
    static const std::vector<Key> keys = [] {
        std::vector<Key> k;
        k.push_back(path_key("dataset_root", AHA_FIELD(c.dataset_root)));
        k.push_back(path_key("filters", AHA_FIELD(c.filters_path)));
        k.push_back(path_key("out_dir", AHA_FIELD(c.out_dir)));
        k.push_back({"models",
                     [](RunConfig& c, const std::string& key, const std::string& v) {
                         auto& e = c.experiment;
                         e.ltm = e.aha = e.use_fastnn = false;
                         for (const auto& m : split_list(v)) {
                             if (m == "ltm") e.ltm = true;
                             else if (m == "aha") e.aha = true;
                             else if (m == "fastnn") e.use_fastnn = true;
                             else throw InvalidArgument("bad value for " + key + ": unknown model '" + m + "'");
                         }
                     },
                     [](const RunConfig& c) {
                         std::vector<std::string> m;
                         if (c.experiment.ltm) m.push_back("ltm");
                         if (c.experiment.aha) m.push_back("aha");
                         if (c.experiment.use_fastnn) m.push_back("fastnn");
                         return join(m, [](const std::string& s) { return s; });
                     }});
        k.push_back({"tasks",
                     [](RunConfig& c, const std::string&, const std::string& v) {
                         c.experiment.tasks.clear();
                         for (const auto& t : split_list(v)) c.experiment.tasks.push_back(bench::parse_task(t));
                     },
                     [](const RunConfig& c) {
                         return join(c.experiment.tasks, [](Task t) { return bench::to_string(t); });
                     }});
        k.push_back({"corruptions",
                     [](RunConfig& c, const std::string&, const std::string& v) {
                         c.experiment.corruptions.clear();
                         for (const auto& t : split_list(v))
                             c.experiment.corruptions.push_back(bench::parse_corruption(t));
                     },
                     [](const RunConfig& c) {
                         return join(c.experiment.corruptions, [](CorruptionKind t) { return bench::to_string(t); });
                     }});
        k.push_back({"levels",
                     [](RunConfig& c, const std::string& key, const std::string& v) {
                         c.experiment.levels.clear();
                         for (const auto& t : split_list(v)) c.experiment.levels.push_back(parse_number<double>(key, t));
                     },
                     [](const RunConfig& c) { return join(c.experiment.levels, bench::format_double); }});
        k.push_back({"seeds",
                     [](RunConfig& c, const std::string& key, const std::string& v) {
                         c.experiment.seeds.clear();
                         for (const auto& t : split_list(v))
                             c.experiment.seeds.push_back(parse_number<std::uint64_t>(key, t));
                     },
                     [](const RunConfig& c) {
                         return join(c.experiment.seeds, [](std::uint64_t s) { return std::to_string(s); });
                     }});
        k.push_back(number_key<int>("runs", AHA_FIELD(c.experiment.runs)));
        k.push_back(number_key<int>("workers", AHA_FIELD(c.experiment.workers)));
        k.push_back(number_key<std::uint64_t>("pretrain.seed", AHA_FIELD(c.pretrain_seed)));
        k.push_back(number_key<int>("pretrain.held_out", AHA_FIELD(c.pretrain_held_out)));

        k.push_back(number_key<int>("vc.source_size", AHA_FIELD(c.experiment.vc.source_size)));
        k.push_back(number_key<double>("vc.resize_factor", AHA_FIELD(c.experiment.vc.resize_factor)));
        k.push_back(number_key<int>("vc.filters", AHA_FIELD(c.experiment.vc.filters)));
        k.push_back(number_key<int>("vc.filter_rows", AHA_FIELD(c.experiment.vc.filter_rows)));
        k.push_back(number_key<int>("vc.filter_cols", AHA_FIELD(c.experiment.vc.filter_cols)));
        k.push_back(number_key<int>("vc.stride_pretrain", AHA_FIELD(c.experiment.vc.stride_pretrain)));
        k.push_back(number_key<int>("vc.stride_eval", AHA_FIELD(c.experiment.vc.stride_eval)));
        k.push_back(number_key<int>("vc.k_pretrain", AHA_FIELD(c.experiment.vc.k_pretrain)));
        k.push_back(number_key<int>("vc.k_eval", AHA_FIELD(c.experiment.vc.k_eval)));
        k.push_back(number_key<double>("vc.learning_rate", AHA_FIELD(c.experiment.vc.learning_rate)));
        k.push_back(number_key<int>("vc.pretrain_batches", AHA_FIELD(c.experiment.vc.pretrain_batches)));
        k.push_back(number_key<int>("vc.pretrain_batch_size", AHA_FIELD(c.experiment.vc.pretrain_batch_size)));
        k.push_back(number_key<int>("vc.pool_size", AHA_FIELD(c.experiment.vc.pool_size)));
        k.push_back(number_key<int>("vc.pool_stride", AHA_FIELD(c.experiment.vc.pool_stride)));
        k.push_back(bool_key("vc.interest_filter", AHA_FIELD(c.experiment.vc.interest_filter)));
        k.push_back(number_key<int>("interest.dog_size", AHA_FIELD(c.experiment.vc.interest.dog.size)));
        k.push_back(number_key<double>("interest.dog_std", AHA_FIELD(c.experiment.vc.interest.dog.std)));
        k.push_back(number_key<double>("interest.dog_k", AHA_FIELD(c.experiment.vc.interest.dog.k_ratio)));
        k.push_back(number_key<int>("interest.nms_size", AHA_FIELD(c.experiment.vc.interest.nms_size)));
        k.push_back(number_key<int>("interest.nms_stride", AHA_FIELD(c.experiment.vc.interest.nms_stride)));
        k.push_back(number_key<int>("interest.smooth_size", AHA_FIELD(c.experiment.vc.interest.smooth_size)));
        k.push_back(number_key<double>("interest.smooth_std", AHA_FIELD(c.experiment.vc.interest.smooth_std)));
        k.push_back(number_key<int>("interest.k_features", AHA_FIELD(c.experiment.vc.interest.k_features)));

        k.push_back(number_key<int>("ps.units", AHA_FIELD(c.experiment.stm.ps.units)));
        k.push_back(number_key<int>("ps.k", AHA_FIELD(c.experiment.stm.ps.k)));
        k.push_back(number_key<double>("ps.inhibition_decay", AHA_FIELD(c.experiment.stm.ps.inhibition_decay)));
        k.push_back(number_key<double>("ps.knockout_rate", AHA_FIELD(c.experiment.stm.ps.knockout_rate)));
        k.push_back(number_key<double>("pc.gain", AHA_FIELD(c.experiment.stm.pc.gain)));
        k.push_back(number_key<int>("pc.cells_per_step", AHA_FIELD(c.experiment.stm.pc.cells_per_step)));
        k.push_back(number_key<int>("pc.iterations", AHA_FIELD(c.experiment.stm.pc.iterations)));
        k.push_back(number_key<double>("conditioning.gain", AHA_FIELD(c.experiment.stm.conditioning.gain)));
        k.push_back(number_key<int>("conditioning.k", AHA_FIELD(c.experiment.stm.conditioning.k)));
        k.push_back(number_key<int>("pr.hidden", AHA_FIELD(c.experiment.stm.pr_hidden)));
        k.push_back(number_key<double>("pr.learning_rate", AHA_FIELD(c.experiment.stm.pr_learning_rate)));
        k.push_back(number_key<double>("pr.l2", AHA_FIELD(c.experiment.stm.pr_l2)));
        k.push_back(number_key<int>("pm.hidden", AHA_FIELD(c.experiment.stm.pm_hidden)));
        k.push_back(number_key<double>("pm.learning_rate", AHA_FIELD(c.experiment.stm.pm_learning_rate)));
        k.push_back(number_key<double>("pm.l2", AHA_FIELD(c.experiment.stm.pm_l2)));
        k.push_back(number_key<int>("stm.train_steps", AHA_FIELD(c.experiment.stm.train_steps)));
        k.push_back(number_key<int>("fastnn.hidden", AHA_FIELD(c.experiment.fastnn.hidden)));
        k.push_back(number_key<double>("fastnn.learning_rate", AHA_FIELD(c.experiment.fastnn.learning_rate)));
        k.push_back(number_key<double>("fastnn.l2", AHA_FIELD(c.experiment.fastnn.l2)));
        k.push_back(number_key<int>("fastnn.train_steps", AHA_FIELD(c.experiment.fastnn.train_steps)));
        k.push_back({"fastnn.match",
                     [](RunConfig& c, const std::string& key, const std::string& v) {
                         if (v == "latent") c.experiment.fastnn_match = bench::FastNnMatch::latent;
                         else if (v == "output") c.experiment.fastnn_match = bench::FastNnMatch::output;
                         else throw InvalidArgument("bad value for " + key + ": '" + v + "' (latent or output)");
                     },
                     [](const RunConfig& c) {
                         return std::string(c.experiment.fastnn_match == bench::FastNnMatch::latent ? "latent"
                                                                                                    : "output");
                     }});
        return k;
    }();
    return keys;
}

#undef AHA_FIELD

const Key& find_key(const std::string& name) {
    for (const auto& k : registry())
        if (k.name == name) return k;
    throw InvalidArgument("unknown config key '" + name + "'");
}

}  // namespace

bench::ExperimentConfig RunConfig::default_experiment() {
    bench::ExperimentConfig e;
    e.seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    return e;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path.string());
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    find_key(key).set(cfg, key, value);
    cfg.experiment.stm.pc.units = cfg.experiment.stm.ps.units;
}

std::vector<std::string> config_keys() {
    std::vector<std::string> out;
    for (const auto& k : registry()) out.push_back(k.name);
    return out;
}

std::string get_setting(const RunConfig& cfg, const std::string& key) { return find_key(key).get(cfg); }

std::string effective_config(const RunConfig& cfg) {
    std::string out;
    for (const auto& k : registry()) out += k.name + " = " + k.get(cfg) + "\n";
    return out;
}

void write_effective_config(const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    out << effective_config(cfg);
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

void validate(const RunConfig& cfg) {
    const auto& e = cfg.experiment;
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw InvalidArgument(msg);
    };
    require(e.runs > 0, "runs must be positive");
    require(e.workers > 0, "workers must be positive");
    require(!e.tasks.empty(), "tasks must not be empty");
    require(!e.corruptions.empty(), "corruptions must not be empty");
    require(!e.seeds.empty(), "seeds must not be empty");
    require(!e.levels.empty(), "levels must not be empty");
    for (double l : e.levels) require(l >= 0.0 && l <= bench::kMaxCorruption, "levels must lie in [0, 0.98]");
    require(e.ltm || e.aha || e.use_fastnn, "models must name at least one of ltm, aha, fastnn");
    require(e.vc.filters > 0 && e.vc.filter_rows > 0 && e.vc.filter_cols > 0, "vc filter shape must be positive");
    require(e.vc.k_eval >= 1 && e.vc.k_eval <= e.vc.filters, "vc.k_eval must be in [1, vc.filters]");
    require(e.vc.k_pretrain >= 1 && e.vc.k_pretrain <= e.vc.filters, "vc.k_pretrain must be in [1, vc.filters]");
    require(e.vc.resize_factor > 0.0 && e.vc.resize_factor <= 1.0, "vc.resize_factor must be in (0, 1]");
    require(e.vc.image_size() >= e.vc.filter_rows && e.vc.image_size() >= e.vc.filter_cols,
            "filters larger than the preprocessed image");
    require(e.vc.stride_eval > 0 && e.vc.stride_pretrain > 0, "strides must be positive");
    require(e.vc.pool_size > 0 && e.vc.pool_stride > 0, "pooling must be positive");
    require(e.vc.pretrain_batches >= 0 && e.vc.pretrain_batch_size > 0, "bad pretraining schedule");
    require(e.stm.ps.units > 0 && e.stm.ps.k > 0 && e.stm.ps.k <= e.stm.ps.units, "ps.k must be in [1, ps.units]");
    require(e.stm.conditioning.k > 0 && e.stm.conditioning.k < e.stm.ps.units,
            "conditioning.k must be in [1, ps.units)");
    require(e.stm.pr_hidden > 0 && e.stm.pm_hidden > 0 && e.fastnn.hidden > 0, "hidden sizes must be positive");
    require(e.stm.train_steps >= 0 && e.fastnn.train_steps >= 0, "train steps must be non-negative");
    require(cfg.pretrain_held_out >= 0, "pretrain.held_out must be non-negative");
}

}  // namespace aha::cli
