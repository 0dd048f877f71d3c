#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aha/bench/corruption.hpp"
#include "aha/bench/omniglot.hpp"
#include "aha/bench/sampling.hpp"
#include "aha/nn/conv.hpp"
#include "aha/stm/aha_stm.hpp"
#include "aha/stm/fastnn.hpp"
#include "aha/vc/config.hpp"

namespace aha::bench {

enum class Model { ltm, aha_pr, aha_pc, fastnn };

// "LTM", "LTM+AHA-PR", "LTM+AHA-PC", "LTM+FastNN".
std::string to_string(Model model);
Model parse_model(const std::string& name);

enum class FastNnMatch { latent, output };

struct ExperimentConfig {
    vc::VcConfig vc{};
    stm::StmConfig stm{};
    stm::FastNnConfig fastnn{};
    FastNnMatch fastnn_match = FastNnMatch::latent;
    bool ltm = true;
    bool aha = true;  // emits both AHA-PR and AHA-PC
    bool use_fastnn = true;
    std::vector<Task> tasks{Task::classification, Task::instance};
    std::vector<CorruptionKind> corruptions{CorruptionKind::none, CorruptionKind::occlusion, CorruptionKind::noise};
    std::vector<double> levels = corruption_levels();
    std::vector<std::uint64_t> seeds{0, 1, 2};
    int runs = 20;
    int workers = 1;
};

/// One sweep cell: a model on a task at one corruption level and seed.
/// A run that threw leaves NaN in its slots and marks the cell failed.
struct MetricsRecord {
    Model model = Model::ltm;
    Task task = Task::classification;
    CorruptionKind corruption = CorruptionKind::none;
    double level = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> run_accuracy;
    std::vector<double> run_recall_loss;  // NaN for LTM, which recalls no image
    double accuracy = 0.0;                // mean of run_accuracy
    double recall_loss = 0.0;
    bool failed = false;
    std::string error;
};

// Sort key: model, task, corruption, level, seed.
bool record_less(const MetricsRecord& a, const MetricsRecord& b);

using CellCallback = std::function<void(const MetricsRecord&)>;

/// Runs every (task, seed, run) unit on a pool of config.workers threads.
/// Each unit studies its episode once and then recalls it under every
/// (corruption, level); kind none is evaluated at level 0 only. The callback
/// fires once per cell, as soon as all its runs are done, from a worker
/// thread but never concurrently. The result is sorted by record_less and
/// depends only on the inputs.
std::vector<MetricsRecord> run_experiment(const OmniglotStore& store, const nn::ConvLayer& filters,
                                          const ExperimentConfig& config, const CellCallback& on_cell = {});

// Encodes preprocessed images as feature columns.
nn::Matrix encode_images(const std::vector<nn::Matrix>& images, const nn::ConvLayer& filters,
                         const vc::VcConfig& cfg);

}  // namespace aha::bench
