#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "aha/nn/conv.hpp"
#include "aha/vc/config.hpp"

namespace aha::vc {

/// Untrained filter bank, uniform in +-1/sqrt(filter area).
nn::ConvLayer make_conv_layer(const VcConfig& cfg, std::uint64_t seed);

/// Convolves each image and keeps, at every spatial position, the k largest
/// channel activations. With `training` set, any filter that won nowhere in
/// the batch is granted its single strongest (image, position) response.
std::vector<nn::Volume> scae_encode_batch(std::span<const nn::Matrix> images, const nn::ConvLayer& layer,
                                          int k, bool training);

nn::Volume scae_encode(const nn::Matrix& image, const nn::ConvLayer& layer, int k, bool training = false);

/// Tied-weight decode: transposed convolution of the code volume.
nn::Matrix scae_decode(const nn::Volume& code, const nn::ConvLayer& layer, int rows, int cols);

/// Mean reconstruction mse over images, using the layer's own stride.
double scae_reconstruction_loss(std::span<const nn::Matrix> images, const nn::ConvLayer& layer, int k);

struct PretrainResult {
    nn::ConvLayer layer;
    double initial_loss = 0.0;  // held-out reconstruction mse before training
    double final_loss = 0.0;    // ... and after
    std::vector<double> batch_losses;
};

using PretrainProgress = std::function<void(int batch, double loss)>;

/// Trains a winner-take-all convolutional autoencoder on `images` with Adam:
/// cfg.pretrain_batches mini-batches of cfg.pretrain_batch_size images drawn
/// with replacement, stride cfg.stride_pretrain, k = cfg.k_pretrain.
/// `held_out` (may be empty) is only used to report initial/final loss.
PretrainResult scae_pretrain(std::span<const nn::Matrix> images, const VcConfig& cfg, std::uint64_t seed,
                             std::span<const nn::Matrix> held_out = {}, const PretrainProgress& progress = {});

}  // namespace aha::vc
