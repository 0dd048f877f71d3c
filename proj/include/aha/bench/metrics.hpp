#pragma once

#include <vector>

#include "aha/nn/types.hpp"

namespace aha::bench {

/// For each recall column, the study column with the smallest mse (lowest
/// index on ties).
std::vector<int> nearest_study(const nn::Matrix& study, const nn::Matrix& recall);

/// Fraction of recall columns whose nearest study column is the one named by
/// `correspondence`. Throws InvalidArgument on a dimension mismatch.
double match_accuracy(const nn::Matrix& study, const nn::Matrix& recall, const std::vector<int>& correspondence);

/// Mean per-image mse between recalled[:, r] and study_images[:, correspondence[r]].
double recall_loss(const nn::Matrix& study_images, const nn::Matrix& recalled, const std::vector<int>& correspondence);

}  // namespace aha::bench
