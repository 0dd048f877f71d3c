#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aha/nn/types.hpp"

namespace aha::stm {

struct HopfieldConfig {
    int units = 225;
    double gain = 2.7;
    int cells_per_step = 20;
    int iterations = 70;
};

/// Graded (tanh) Hopfield network with pseudoinverse storage.
struct HopfieldNet {
    HopfieldConfig config;
    nn::Matrix weights;            // symmetric, zero diagonal
    std::vector<int> update_order;  // fixed permutation of units, cycled
    std::vector<nn::Vector> stored;
};

HopfieldNet make_hopfield(const HopfieldConfig& config, std::uint64_t seed);

/// Pseudoinverse rule: W = (1/N) X C^-1 X^T with C = (1/N) X^T X (+1e-6 I),
/// diagonal zeroed. Patterns must be bipolar; linearly dependent patterns
/// throw DegeneratePattern.
void pc_store(HopfieldNet& net, const std::vector<nn::Vector>& patterns);

using ConvergeObserver = std::function<void(int iteration, const nn::Vector& state)>;

/// Starts from `cue` and runs config.iterations steps; each step updates the
/// next config.cells_per_step units of update_order in place with
/// s_i = tanh(gain * W_i . s). The observer sees the state after every step.
nn::Vector pc_converge(const HopfieldNet& net, const nn::Vector& cue, const ConvergeObserver& observer = {});

double hopfield_energy(const HopfieldNet& net, const nn::Vector& state);

}  // namespace aha::stm
