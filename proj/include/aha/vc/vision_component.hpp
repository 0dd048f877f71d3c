#pragma once

#include <vector>

#include "aha/nn/conv.hpp"
#include "aha/vc/config.hpp"

namespace aha::vc {

/// Flattened pooled code volume (channel, row, col order).
struct FeatureVector {
    nn::Vector values;
    int channels = 0;
    int rows = 0;
    int cols = 0;
};

/// Central crop of `mask` to rows x cols.
nn::Matrix crop_center(const nn::Matrix& mask, int rows, int cols);

/// Evaluation-mode encoding of one preprocessed image: sparse code at
/// stride_eval with k_eval winners, clamped at zero, gated by the interest
/// mask, max-pooled. Throws InvalidState for untrained filters.
FeatureVector vc_forward(const nn::Matrix& image, const nn::ConvLayer& layer, const VcConfig& cfg = {});

// Stacks feature vectors as columns.
nn::Matrix stack_features(const std::vector<FeatureVector>& features);

}  // namespace aha::vc
