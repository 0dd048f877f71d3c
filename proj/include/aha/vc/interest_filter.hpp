#pragma once

#include "aha/nn/types.hpp"
#include "aha/vc/config.hpp"

namespace aha::vc {

// Binary map of the strongest local extrema of the positive and negative
// DoG responses (at most 2 * k_features ones).
nn::Matrix interest_keypoints(const nn::Matrix& image, const InterestConfig& cfg = {});

// Keypoints smoothed with a peak-normalised Gaussian, clamped to [0, 1].
nn::Matrix interest_mask(const nn::Matrix& image, const InterestConfig& cfg = {});

}  // namespace aha::vc
