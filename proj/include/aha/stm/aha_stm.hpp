#pragma once

#include <cstdint>
#include <vector>

#include "aha/nn/dense_net.hpp"
#include "aha/stm/conditioning.hpp"
#include "aha/stm/hopfield.hpp"
#include "aha/stm/pattern_separation.hpp"

namespace aha::stm {

struct StmConfig {
    PsConfig ps{};
    HopfieldConfig pc{};
    ConditioningParams conditioning{};
    int pr_hidden = 1000;
    double pr_learning_rate = 0.01;
    double pr_l2 = 2.5e-5;
    int pm_hidden = 100;
    double pm_learning_rate = 0.01;
    double pm_l2 = 4e-4;
    int train_steps = 60;
};

/// Everything the hippocampal model learns during one study episode.
/// Samples are matrix columns throughout.
struct StmState {
    StmConfig config;
    std::uint64_t seed = 0;
    PsLayer ps;
    nn::DenseNet2 pr;  // features -> sparse pattern estimate
    HopfieldNet pc;
    nn::DenseNet2 pm;  // settled engram -> image
    std::vector<SparsePattern> study_targets;
    nn::Matrix study_supports;  // units x samples, binary
    nn::Matrix engrams;         // units x samples, bipolar
    nn::Matrix study_images;    // pixels x samples
    bool studied = false;
};

struct StudyReport {
    std::vector<double> pr_losses;
    std::vector<double> pm_losses;
};

struct RecallResult {
    nn::Matrix pr_out;     // sigmoid outputs
    nn::Matrix cues;       // conditioned Hopfield cues
    nn::Matrix pc_out;     // settled states
    nn::Matrix pm_images;  // reconstructions, pixels x samples
};

StmState make_stm(const StmConfig& config, int input_dim, int image_pixels, std::uint64_t seed);

/// Fresh weights, fresh optimiser moments, cleared inhibition and memories.
/// The PS projection is rebuilt from the same seed, so it is identical.
void reset(StmState& stm);

std::vector<double> pr_train(nn::DenseNet2& pr, const nn::Matrix& features, const nn::Matrix& supports, int steps);
nn::Matrix pr_infer(const nn::DenseNet2& pr, const nn::Matrix& features);

std::vector<double> pm_train(nn::DenseNet2& pm, const nn::Matrix& states, const nn::Matrix& images, int steps);
nn::Matrix pm_infer(const nn::DenseNet2& pm, const nn::Matrix& states);

/// One-exposure memorisation of a study set. Requires a fresh state.
StudyReport study(StmState& stm, const nn::Matrix& features, const nn::Matrix& images);

/// PR cue -> conditioning -> PC completion -> PM grounding for each column.
RecallResult recall(const StmState& stm, const nn::Matrix& features);

}  // namespace aha::stm
