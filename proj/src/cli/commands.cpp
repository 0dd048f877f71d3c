#include "aha/cli/commands.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>

#include "aha/bench/results_io.hpp"
#include "aha/errors.hpp"
#include "aha/rng.hpp"
#include "aha/vc/filter_io.hpp"
#include "aha/vc/image.hpp"
#include "aha/vc/scae.hpp"

namespace aha::cli {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IngestionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

void require_dataset(const RunConfig& cfg) {
    if (cfg.dataset_root.empty()) throw InvalidArgument("dataset_root is not set");
}

void ensure_parent(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

std::size_t cell_count(const bench::ExperimentConfig& e) {
    std::size_t conditions = 0;
    for (auto kind : e.corruptions) conditions += kind == bench::CorruptionKind::none ? 1 : e.levels.size();
    const std::size_t models = (e.ltm ? 1 : 0) + (e.aha ? 2 : 0) + (e.use_fastnn ? 1 : 0);
    return models * e.tasks.size() * e.seeds.size() * conditions;
}

void print_summary(const std::vector<bench::MetricsRecord>& records, std::ostream& out) {
    const std::vector<bench::Model> order{bench::Model::aha_pr, bench::Model::aha_pc, bench::Model::fastnn,
                                          bench::Model::ltm};
    // (task, model) -> accuracies over seeds. Clean means kind none, or
    // level 0 of the first corruption kind when none was not run.
    std::map<std::pair<bench::Task, bench::Model>, std::vector<double>> clean;
    for (auto task : {bench::Task::classification, bench::Task::instance}) {
        std::optional<bench::CorruptionKind> kind;
        for (const auto& r : records)
            if (r.task == task && r.level == 0.0 && (!kind || r.corruption == bench::CorruptionKind::none))
                kind = r.corruption;
        for (const auto& r : records)
            if (kind && r.task == task && r.level == 0.0 && r.corruption == *kind)
                clean[{task, r.model}].push_back(r.accuracy);
    }
    if (clean.empty()) return;

    out << "clean accuracy (mean over seeds)\n" << std::left << std::setw(16) << "task";
    for (auto m : order) out << std::setw(14) << bench::to_string(m);
    out << '\n';
    for (auto task : {bench::Task::classification, bench::Task::instance}) {
        bool any = false;
        for (auto m : order) any = any || clean.count({task, m});
        if (!any) continue;
        out << std::setw(16) << bench::to_string(task);
        for (auto m : order) {
            const auto it = clean.find({task, m});
            out << std::setw(14) << (it == clean.end() ? "-" : bench::format_double(bench::summarise(it->second).mean));
        }
        out << '\n';
    }
    out << std::right;
}

}  // namespace

int cmd_pretrain(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(cfg);
        require_dataset(cfg);
        const auto& vcfg = cfg.experiment.vc;
        const auto split = bench::load_split(cfg.dataset_root / bench::kBackgroundDir, vcfg.source_size);
        const auto raw = bench::all_images(split);
        if (static_cast<int>(raw.size()) <= cfg.pretrain_held_out)
            throw InvalidArgument("pretrain.held_out must be smaller than the " + std::to_string(raw.size()) +
                                  " background images");

        std::vector<int> order(raw.size());
        std::iota(order.begin(), order.end(), 0);
        Engine rng(derive_seed(cfg.pretrain_seed, {7}));
        aha::shuffle(order.begin(), order.end(), rng);
        std::vector<nn::Matrix> held_out;
        std::vector<nn::Matrix> train;
        for (std::size_t i = 0; i < order.size(); ++i) {
            auto img = vc::preprocess(*raw[order[i]], vcfg);
            (static_cast<int>(i) < cfg.pretrain_held_out ? held_out : train).push_back(std::move(img));
        }
        out << "pretraining on " << train.size() << " images (" << held_out.size() << " held out), "
            << vcfg.pretrain_batches << " batches of " << vcfg.pretrain_batch_size << std::endl;

        const int every = std::max(1, vcfg.pretrain_batches / 20);
        const auto result = vc::scae_pretrain(train, vcfg, cfg.pretrain_seed, held_out, [&](int batch, double loss) {
            if ((batch + 1) % every == 0 || batch + 1 == vcfg.pretrain_batches)
                out << "batch " << batch + 1 << "/" << vcfg.pretrain_batches << " loss " << loss << std::endl;
        });

        ensure_parent(cfg.filters_path);
        vc::save_filters(cfg.filters_path, result.layer);
        write_effective_config(cfg, cfg.filters_path.string() + ".config");
        out << "initial reconstruction loss " << bench::format_double(result.initial_loss) << '\n'
            << "final reconstruction loss " << bench::format_double(result.final_loss) << '\n'
            << "wrote " << cfg.filters_path.string() << std::endl;
        return kExitOk;
    });
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(cfg);
        require_dataset(cfg);
        const auto& e = cfg.experiment;
        const nn::ConvLayer filters = vc::load_filters(cfg.filters_path);
        if (filters.count() != e.vc.filters || filters.filter_rows != e.vc.filter_rows ||
            filters.filter_cols != e.vc.filter_cols)
            throw InvalidArgument(cfg.filters_path.string() + " holds " + std::to_string(filters.count()) +
                                  " filters of " + std::to_string(filters.filter_rows) + "x" +
                                  std::to_string(filters.filter_cols) + ", config expects " +
                                  std::to_string(e.vc.filters) + " of " + std::to_string(e.vc.filter_rows) + "x" +
                                  std::to_string(e.vc.filter_cols));

        bench::OmniglotStore store;
        store.evaluation = bench::load_split(cfg.dataset_root / bench::kEvaluationDir, e.vc.source_size);

        fs::create_directories(cfg.out_dir);
        write_effective_config(cfg, cfg.out_dir / "config.txt");

        const std::size_t total = cell_count(e);
        std::size_t done = 0;
        const auto records = bench::run_experiment(store, filters, e, [&](const bench::MetricsRecord& r) {
            ++done;
            out << "[" << done << "/" << total << "] " << bench::to_string(r.model) << ' ' << bench::to_string(r.task)
                << ' ' << bench::to_string(r.corruption) << " level=" << bench::format_double(r.level)
                << " seed=" << r.seed << " accuracy=" << bench::format_double(r.accuracy)
                << " recall_loss=" << bench::format_double(r.recall_loss) << std::endl;
            if (r.failed) err << "cell failed: " << r.error << std::endl;
        });

        bench::write_results_csv(records, cfg.out_dir / "results.csv");
        bench::write_runs_csv(records, cfg.out_dir / "runs.csv");
        print_summary(records, out);
        out << "wrote " << (cfg.out_dir / "results.csv").string() << std::endl;

        const bool any_ok = std::any_of(records.begin(), records.end(), [](const auto& r) { return !r.failed; });
        if (!any_ok) {
            err << "error: every cell failed" << std::endl;
            return kExitRuntime;
        }
        return kExitOk;
    });
}

int cmd_export_plots(const fs::path& csv, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto rows = bench::read_results_csv(csv);
        for (const auto& path : bench::export_plots(rows, out_dir)) out << "wrote " << path.string() << '\n';
        return kExitOk;
    });
}

}  // namespace aha::cli
