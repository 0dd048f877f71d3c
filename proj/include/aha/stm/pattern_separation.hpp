#pragma once

#include <cstdint>
#include <vector>

#include "aha/nn/types.hpp"

namespace aha::stm {

struct PsConfig {
    int units = 225;
    int k = 10;
    double inhibition_decay = 0.95;
    double knockout_rate = 0.25;
};

/// Fixed random projection with top-k competition and refractory
/// inhibition. `weights` is never trained.
struct PsLayer {
    PsConfig config;
    nn::Matrix weights;     // units x input_dim
    nn::Vector inhibition;  // refractory level per unit, in [0, 1]
};

/// A dense vector with exactly k active units. `active` lists the winners in
/// rank order; `values` holds their responses and zeros elsewhere.
struct SparsePattern {
    nn::Vector values;
    std::vector<int> active;

    // 1 on active units, 0 elsewhere.
    nn::Vector support() const;
};

/// Weights uniform in [0, 1), then floor(knockout_rate * input_dim) randomly
/// chosen incoming weights of every unit are set to zero.
PsLayer ps_init(int input_dim, std::uint64_t seed, const PsConfig& config = {});

void clear_inhibition(PsLayer& layer);

/// Encodes each column of `batch`. With sequential inhibition the samples are
/// taken in order and each sample's winners are made refractory for the ones
/// that follow; otherwise inhibition is neither applied nor updated.
std::vector<SparsePattern> ps_forward(PsLayer& layer, const nn::Matrix& batch, bool sequential_inhibition);

// Number of shared active units.
int overlap(const SparsePattern& a, const SparsePattern& b);

}  // namespace aha::stm
