#pragma once

#include <vector>

#include "aha/nn/types.hpp"

namespace aha::nn {

/// Indices of the k largest entries of `values`, ordered by descending value.
/// Equal values are ranked by lowest index first. Throws InvalidArgument if
/// k exceeds the length.
std::vector<int> topk_indices(const Vector& values, int k);

/// Binary mask with ones at topk_indices(values, k).
Vector topk_mask(const Vector& values, int k);

}  // namespace aha::nn
