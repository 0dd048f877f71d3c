#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the code paths being checked beyond plain data accessors.

#include <functional>
#include <vector>

#include "aha/nn/conv.hpp"
#include "aha/nn/dense_net.hpp"

namespace oracle {

using aha::nn::Matrix;
using aha::nn::Vector;

// Full stable sort, then take the first k.
std::vector<int> sorted_topk(const Vector& v, int k);

double scalar_mse(const Vector& a, const Vector& b);
double scalar_xent(const Vector& pred, const Vector& target, double clamp);

double activation(aha::nn::Activation act, double x);

// Triple-loop forward pass for one sample.
Vector dense_output(const aha::nn::DenseNet2& net, const Vector& x);

// Objective as seen by the optimiser: batch-mean loss + (l2/2)||W||^2.
double objective(const aha::nn::DenseNet2& net, const Matrix& x, const Matrix& t, aha::nn::Loss loss);

// Central finite differences of `objective` for every parameter.
aha::nn::DenseNet2Gradients finite_difference_gradients(const aha::nn::DenseNet2& net, const Matrix& x,
                                                        const Matrix& t, aha::nn::Loss loss, double step);

// Largest |a-b| / max(|a|, |b|, 1e-8) over corresponding entries.
double max_relative_error(const Matrix& a, const Matrix& b);

// Quadruple loop cross-correlation.
aha::nn::Volume naive_conv(const Matrix& image, const Matrix& filters, int fr, int fc, int stride);

// Loop max-pool over windows clipped to the volume.
aha::nn::Volume naive_pool(const aha::nn::Volume& v, int size, int stride);

// Hopfield pseudoinverse weights via explicit Moore-Penrose inverse (SVD).
Matrix pseudoinverse_weights(const std::vector<Vector>& patterns);

}  // namespace oracle
