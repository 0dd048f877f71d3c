#pragma once

#include <cstdint>
#include <optional>

#include "aha/nn/activation.hpp"
#include "aha/nn/losses.hpp"
#include "aha/nn/types.hpp"

namespace aha::nn {

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct DenseNet2Config {
    int inputs = 0;
    int hidden = 0;
    int outputs = 0;
    Activation hidden_activation = Activation::leaky_relu;
    Activation output_activation = Activation::sigmoid;
    double l2 = 0.0;
    double learning_rate = 0.01;
    AdamConfig adam{};
};

struct DenseNet2Gradients {
    Matrix w1;
    Vector b1;
    Matrix w2;
    Vector b2;
};

struct AdamState {
    DenseNet2Gradients first;
    DenseNet2Gradients second;
    long step = 0;
};

/// A fully-connected network with exactly one hidden layer and one output
/// layer. Samples are columns of the input matrix.
struct DenseNet2 {
    DenseNet2Config config;
    Matrix w1;  // hidden x inputs
    Vector b1;
    Matrix w2;  // outputs x hidden
    Vector b2;
    // Empty until the first train_step, and after release_optimizer().
    std::optional<AdamState> optimizer;
};

struct DenseForward {
    Matrix hidden_pre;
    Matrix hidden;
    Matrix out_pre;
    Matrix out;
};

/// Builds a network with weights drawn uniformly from
/// [-1/sqrt(fan_in), 1/sqrt(fan_in)] and zero biases.
DenseNet2 make_dense_net(const DenseNet2Config& config, std::uint64_t seed);

/// Re-initialises weights from `seed` and clears optimizer moments.
void reset(DenseNet2& net, std::uint64_t seed);

DenseForward dense_forward(const DenseNet2& net, const Matrix& inputs);

// Single-sample convenience; returns the output layer only.
Vector dense_output(const DenseNet2& net, const Vector& input);

/// Backpropagated gradients of batch-mean loss plus (l2/2)*||W||^2 over
/// both weight matrices (biases are not regularised). Returns the data loss.
double compute_gradients(const DenseNet2& net, const Matrix& inputs, const Matrix& targets,
                         Loss loss, DenseNet2Gradients& grads);

/// One Adam update. Returns the batch-mean data loss measured before the
/// update. Throws TrainingDiverged on a non-finite loss.
double train_step(DenseNet2& net, const Matrix& inputs, const Matrix& targets, Loss loss);

// Drops the Adam moments (they are rebuilt on the next train_step).
void release_optimizer(DenseNet2& net);

}  // namespace aha::nn
