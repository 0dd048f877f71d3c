#pragma once

#include "aha/nn/types.hpp"

namespace aha::stm {

struct ConditioningParams {
    double gain = 10.0;
    int k = 10;
};

/// 2*sign(x) - 1: +1 where x > 0, -1 where x == 0. Negative input throws.
nn::Vector condition_memorise(const nn::Vector& x);

/// Turns a retrieval network output (values in [0, 1]) into a Hopfield cue:
/// z = gain * y / sum(y), v = 2z - 1, then an offset puts the k-th and
/// (k+1)-th largest values either side of zero; clamped to [-1, 1]. If those
/// two values tie, the k winners by lowest index are nudged just above zero.
/// An all-zero y throws DegenerateCue.
nn::Vector condition_retrieve(const nn::Vector& y, const ConditioningParams& params = {});

nn::Matrix condition_retrieve_batch(const nn::Matrix& y, const ConditioningParams& params = {});

}  // namespace aha::stm
