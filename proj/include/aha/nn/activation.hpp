#pragma once

#include <string_view>

#include "aha/nn/types.hpp"

namespace aha::nn {

enum class Activation { identity, leaky_relu, sigmoid, tanh };

inline constexpr double kLeakySlope = 0.01;

Matrix activate(Activation act, const Matrix& pre);

// Derivative of the activation evaluated elementwise, given both the
// pre-activation and the activation output.
Matrix activation_derivative(Activation act, const Matrix& pre, const Matrix& post);

std::string_view to_string(Activation act);

}  // namespace aha::nn
