#pragma once

#include "aha/nn/types.hpp"

namespace aha::nn {

struct KernelSpec {
    int size = 7;
    double std = 0.82;
    double k_ratio = 1.6;
};

enum class KernelNorm { unit_sum, unit_peak };

/// Square isotropic Gaussian sampled at integer offsets from the centre.
Matrix gaussian_kernel(int size, double std, KernelNorm norm = KernelNorm::unit_sum);

/// Difference of two unit-sum Gaussians (std and k_ratio * std), mean
/// subtracted so the kernel sums to zero.
Matrix dog_kernel(const KernelSpec& spec);

}  // namespace aha::nn
