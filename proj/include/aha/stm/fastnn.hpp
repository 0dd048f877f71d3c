#pragma once

#include <cstdint>
#include <vector>

#include "aha/nn/dense_net.hpp"

namespace aha::stm {

struct FastNnConfig {
    int hidden = 100;
    double learning_rate = 0.01;
    double l2 = 4e-5;
    int train_steps = 60;
};

// Baseline short-term memory: features -> hidden latent -> image.
struct FastNnState {
    FastNnConfig config;
    std::uint64_t seed = 0;
    nn::DenseNet2 net;
    nn::Matrix study_latents;
    nn::Matrix study_images;
    bool studied = false;
};

struct FastNnRecall {
    nn::Matrix latents;
    nn::Matrix images;
};

FastNnState make_fastnn(const FastNnConfig& config, int input_dim, int image_pixels, std::uint64_t seed);

void reset(FastNnState& state);

// Returns the per-step training loss.
std::vector<double> fastnn_study(FastNnState& state, const nn::Matrix& features, const nn::Matrix& images);

FastNnRecall fastnn_recall(const FastNnState& state, const nn::Matrix& features);

}  // namespace aha::stm
