#include "aha/stm/fastnn.hpp"

#include "aha/errors.hpp"

namespace aha::stm {

FastNnState make_fastnn(const FastNnConfig& config, int input_dim, int image_pixels, std::uint64_t seed) {
    if (config.train_steps < 0) throw InvalidArgument("make_fastnn: negative train_steps");
    nn::DenseNet2Config cfg;
    cfg.inputs = input_dim;
    cfg.hidden = config.hidden;
    cfg.outputs = image_pixels;
    cfg.hidden_activation = nn::Activation::leaky_relu;
    cfg.output_activation = nn::Activation::leaky_relu;
    cfg.learning_rate = config.learning_rate;
    cfg.l2 = config.l2;

    FastNnState state;
    state.config = config;
    state.seed = seed;
    state.net = nn::make_dense_net(cfg, seed);
    return state;
}

void reset(FastNnState& state) {
    nn::reset(state.net, state.seed);
    state.study_latents.resize(0, 0);
    state.study_images.resize(0, 0);
    state.studied = false;
}

std::vector<double> fastnn_study(FastNnState& state, const nn::Matrix& features, const nn::Matrix& images) {
    if (state.studied) throw InvalidState("fastnn_study: state already holds a study set; call reset first");
    if (features.cols() == 0 || features.cols() != images.cols())
        throw InvalidArgument("fastnn_study: features and images must have the same non-zero sample count");
    if (features.rows() != state.net.config.inputs || images.rows() != state.net.config.outputs)
        throw InvalidArgument("fastnn_study: dimension mismatch");

    std::vector<double> losses;
    losses.reserve(static_cast<std::size_t>(state.config.train_steps));
    for (int s = 0; s < state.config.train_steps; ++s)
        losses.push_back(nn::train_step(state.net, features, images, nn::Loss::mse));
    nn::release_optimizer(state.net);
    state.study_latents = nn::dense_forward(state.net, features).hidden;
    state.study_images = images;
    state.studied = true;
    return losses;
}

FastNnRecall fastnn_recall(const FastNnState& state, const nn::Matrix& features) {
    if (!state.studied) throw InvalidState("fastnn_recall: nothing has been studied");
    if (features.rows() != state.net.config.inputs) throw InvalidArgument("fastnn_recall: feature dimension mismatch");
    auto fwd = nn::dense_forward(state.net, features);
    return {std::move(fwd.hidden), std::move(fwd.out)};
}

}  // namespace aha::stm
