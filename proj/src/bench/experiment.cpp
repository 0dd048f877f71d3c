#include "aha/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <tuple>

#include "aha/bench/metrics.hpp"
#include "aha/errors.hpp"
#include "aha/rng.hpp"
#include "aha/vc/image.hpp"
#include "aha/vc/vision_component.hpp"

namespace aha::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Condition {
    CorruptionKind kind;
    double level;
};

struct Unit {
    int task;
    int seed;
    int run;
};

struct RunScores {
    // [condition][model]
    std::vector<std::vector<double>> accuracy;
    std::vector<std::vector<double>> loss;
};

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? kNaN : s / static_cast<double>(v.size());
}

nn::Matrix flatten_all(const std::vector<nn::Matrix>& images) {
    nn::Matrix out(images.front().size(), static_cast<Eigen::Index>(images.size()));
    for (std::size_t i = 0; i < images.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = vc::flatten(images[i]);
    return out;
}

class Sweep {
public:
    Sweep(const OmniglotStore& store, const nn::ConvLayer& filters, const ExperimentConfig& cfg,
          const CellCallback& on_cell)
        : store_(store), filters_(filters), cfg_(cfg), on_cell_(on_cell) {
        for (auto kind : cfg.corruptions) {
            if (kind == CorruptionKind::none) {
                conditions_.push_back({kind, 0.0});
            } else {
                for (double level : cfg.levels) conditions_.push_back({kind, level});
            }
        }
        if (cfg.ltm) models_.push_back(Model::ltm);
        if (cfg.aha) {
            models_.push_back(Model::aha_pr);
            models_.push_back(Model::aha_pc);
        }
        if (cfg.use_fastnn) models_.push_back(Model::fastnn);

        const std::size_t groups = cfg.tasks.size() * cfg.seeds.size();
        records_.resize(groups * conditions_.size() * models_.size());
        remaining_ = std::vector<std::atomic<int>>(groups);
        for (auto& r : remaining_) r = cfg.runs;
        for (std::size_t t = 0; t < cfg.tasks.size(); ++t)
            for (std::size_t s = 0; s < cfg.seeds.size(); ++s)
                for (std::size_t c = 0; c < conditions_.size(); ++c)
                    for (std::size_t m = 0; m < models_.size(); ++m) {
                        auto& rec = records_[index(t, s, c, m)];
                        rec.model = models_[m];
                        rec.task = cfg.tasks[t];
                        rec.corruption = conditions_[c].kind;
                        rec.level = conditions_[c].level;
                        rec.seed = cfg.seeds[s];
                        rec.run_accuracy.assign(static_cast<std::size_t>(cfg.runs), kNaN);
                        rec.run_recall_loss.assign(static_cast<std::size_t>(cfg.runs), kNaN);
                    }
        for (int t = 0; t < static_cast<int>(cfg.tasks.size()); ++t)
            for (int s = 0; s < static_cast<int>(cfg.seeds.size()); ++s)
                for (int r = 0; r < cfg.runs; ++r) units_.push_back({t, s, r});
    }

    std::vector<MetricsRecord> run() {
        const int workers = std::max(1, std::min<int>(cfg_.workers, static_cast<int>(units_.size())));
        if (workers == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back([this] { work(); });
            for (auto& th : pool) th.join();
        }
        std::sort(records_.begin(), records_.end(), record_less);
        return std::move(records_);
    }

private:
    std::size_t index(std::size_t t, std::size_t s, std::size_t c, std::size_t m) const {
        return ((t * cfg_.seeds.size() + s) * conditions_.size() + c) * models_.size() + m;
    }

    void work() {
        for (;;) {
            const std::size_t i = next_.fetch_add(1);
            if (i >= units_.size()) return;
            const Unit u = units_[i];
            try {
                const RunScores scores = evaluate(u);
                for (std::size_t c = 0; c < conditions_.size(); ++c)
                    for (std::size_t m = 0; m < models_.size(); ++m) {
                        auto& rec = records_[index(u.task, u.seed, c, m)];
                        rec.run_accuracy[u.run] = scores.accuracy[c][m];
                        rec.run_recall_loss[u.run] = scores.loss[c][m];
                    }
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex_);
                for (std::size_t c = 0; c < conditions_.size(); ++c)
                    for (std::size_t m = 0; m < models_.size(); ++m) {
                        auto& rec = records_[index(u.task, u.seed, c, m)];
                        rec.failed = true;
                        if (rec.error.empty()) rec.error = "run " + std::to_string(u.run) + ": " + e.what();
                    }
            }
            const std::size_t group = static_cast<std::size_t>(u.task) * cfg_.seeds.size() + u.seed;
            if (remaining_[group].fetch_sub(1) == 1) finish(u.task, u.seed);
        }
    }

    void finish(int t, int s) {
        std::lock_guard lock(mutex_);
        for (std::size_t c = 0; c < conditions_.size(); ++c)
            for (std::size_t m = 0; m < models_.size(); ++m) {
                auto& rec = records_[index(t, s, c, m)];
                rec.accuracy = mean(rec.run_accuracy);
                rec.recall_loss = mean(rec.run_recall_loss);
                if (on_cell_) on_cell_(rec);
            }
    }

    RunScores evaluate(const Unit& u) const {
        const Task task = cfg_.tasks[u.task];
        const std::uint64_t seed = cfg_.seeds[u.seed];
        const EpisodePair ep = sample_run(task, store_, u.run, seed);

        std::vector<nn::Matrix> study_images;
        std::vector<nn::Matrix> recall_images;
        for (const auto* img : ep.study) study_images.push_back(vc::preprocess(*img, cfg_.vc));
        for (const auto* img : ep.recall) recall_images.push_back(vc::preprocess(*img, cfg_.vc));
        const nn::Matrix study_features = encode_images(study_images, filters_, cfg_.vc);
        const nn::Matrix study_pixels = flatten_all(study_images);
        const int dim = static_cast<int>(study_features.rows());
        const int pixels = static_cast<int>(study_pixels.rows());
        const std::uint64_t unit_seed =
            derive_seed(seed, {static_cast<std::uint64_t>(task), static_cast<std::uint64_t>(u.run)});

        std::optional<stm::StmState> aha;
        if (cfg_.aha) {
            aha = stm::make_stm(cfg_.stm, dim, pixels, derive_seed(unit_seed, {1}));
            stm::study(*aha, study_features, study_pixels);
        }
        std::optional<stm::FastNnState> fastnn;
        nn::Matrix fastnn_study_out;
        if (cfg_.use_fastnn) {
            fastnn = stm::make_fastnn(cfg_.fastnn, dim, pixels, derive_seed(unit_seed, {2}));
            stm::fastnn_study(*fastnn, study_features, study_pixels);
            if (cfg_.fastnn_match == FastNnMatch::output)
                fastnn_study_out = stm::fastnn_recall(*fastnn, study_features).images;
        }

        RunScores scores;
        for (const auto& cond : conditions_) {
            std::vector<nn::Matrix> corrupted;
            for (std::size_t i = 0; i < recall_images.size(); ++i) {
                const CorruptionSpec spec{
                    cond.kind, cond.level,
                    derive_seed(seed, {static_cast<std::uint64_t>(task), static_cast<std::uint64_t>(u.run),
                                       static_cast<std::uint64_t>(cond.kind), i})};
                corrupted.push_back(corrupt(recall_images[i], spec));
            }
            const nn::Matrix features = encode_images(corrupted, filters_, cfg_.vc);

            std::vector<double> acc;
            std::vector<double> loss;
            std::optional<stm::RecallResult> aha_out;
            for (Model m : models_) {
                switch (m) {
                    case Model::ltm:
                        acc.push_back(match_accuracy(study_features, features, ep.correspondence));
                        loss.push_back(kNaN);
                        break;
                    case Model::aha_pr:
                    case Model::aha_pc: {
                        if (!aha_out) aha_out = stm::recall(*aha, features);
                        const double l = recall_loss(study_pixels, aha_out->pm_images, ep.correspondence);
                        acc.push_back(m == Model::aha_pr
                                          ? match_accuracy(aha->study_supports, aha_out->pr_out, ep.correspondence)
                                          : match_accuracy(aha->engrams, aha_out->pc_out, ep.correspondence));
                        loss.push_back(l);
                        break;
                    }
                    case Model::fastnn: {
                        const auto out = stm::fastnn_recall(*fastnn, features);
                        acc.push_back(cfg_.fastnn_match == FastNnMatch::latent
                                          ? match_accuracy(fastnn->study_latents, out.latents, ep.correspondence)
                                          : match_accuracy(fastnn_study_out, out.images, ep.correspondence));
                        loss.push_back(recall_loss(study_pixels, out.images, ep.correspondence));
                        break;
                    }
                }
            }
            scores.accuracy.push_back(std::move(acc));
            scores.loss.push_back(std::move(loss));
        }
        return scores;
    }

    const OmniglotStore& store_;
    const nn::ConvLayer& filters_;
    const ExperimentConfig& cfg_;
    const CellCallback& on_cell_;
    std::vector<Condition> conditions_;
    std::vector<Model> models_;
    std::vector<Unit> units_;
    std::vector<MetricsRecord> records_;
    std::vector<std::atomic<int>> remaining_;
    std::atomic<std::size_t> next_{0};
    std::mutex mutex_;
};

}  // namespace

std::string to_string(Model model) {
    switch (model) {
        case Model::ltm: return "LTM";
        case Model::aha_pr: return "LTM+AHA-PR";
        case Model::aha_pc: return "LTM+AHA-PC";
        case Model::fastnn: return "LTM+FastNN";
    }
    return "?";
}

Model parse_model(const std::string& name) {
    for (Model m : {Model::ltm, Model::aha_pr, Model::aha_pc, Model::fastnn})
        if (to_string(m) == name) return m;
    throw InvalidArgument("unknown model '" + name + "'");
}

bool record_less(const MetricsRecord& a, const MetricsRecord& b) {
    return std::tie(a.model, a.task, a.corruption, a.level, a.seed) <
           std::tie(b.model, b.task, b.corruption, b.level, b.seed);
}

nn::Matrix encode_images(const std::vector<nn::Matrix>& images, const nn::ConvLayer& filters,
                         const vc::VcConfig& cfg) {
    std::vector<vc::FeatureVector> features;
    features.reserve(images.size());
    for (const auto& img : images) features.push_back(vc::vc_forward(img, filters, cfg));
    return vc::stack_features(features);
}

std::vector<MetricsRecord> run_experiment(const OmniglotStore& store, const nn::ConvLayer& filters,
                                          const ExperimentConfig& config, const CellCallback& on_cell) {
    if (config.runs <= 0) throw InvalidArgument("run_experiment: runs must be positive");
    if (config.tasks.empty() || config.seeds.empty() || config.corruptions.empty())
        throw InvalidArgument("run_experiment: empty task, seed or corruption list");
    if (!config.ltm && !config.aha && !config.use_fastnn) throw InvalidArgument("run_experiment: no model selected");
    for (double level : config.levels)
        if (!(level >= 0.0) || level > kMaxCorruption)
            throw InvalidArgument("run_experiment: levels must lie in [0, 0.98]");
    if (config.levels.empty()) throw InvalidArgument("run_experiment: empty level list");
    if (!filters.trained) throw InvalidState("run_experiment: filters have not been trained or loaded");
    return Sweep(store, filters, config, on_cell).run();
}

}  // namespace aha::bench
