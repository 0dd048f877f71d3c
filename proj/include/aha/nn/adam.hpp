#pragma once

#include <cmath>

#include "aha/nn/dense_net.hpp"

namespace aha::nn {

// Adam moments for a single parameter tensor.
struct AdamMoments {
    Matrix first;
    Matrix second;
    long step = 0;
};

inline void adam_step(Matrix& param, const Matrix& grad, AdamMoments& moments, const AdamConfig& adam,
                      double learning_rate) {
    if (moments.step == 0) {
        moments.first = Matrix::Zero(param.rows(), param.cols());
        moments.second = Matrix::Zero(param.rows(), param.cols());
    }
    ++moments.step;
    const double c1 = 1.0 - std::pow(adam.beta1, static_cast<double>(moments.step));
    const double c2 = 1.0 - std::pow(adam.beta2, static_cast<double>(moments.step));
    moments.first.array() = adam.beta1 * moments.first.array() + (1.0 - adam.beta1) * grad.array();
    moments.second.array() = adam.beta2 * moments.second.array() + (1.0 - adam.beta2) * grad.array().square();
    param.array() -= learning_rate * (moments.first.array() / c1) /
                     ((moments.second.array() / c2).sqrt() + adam.epsilon);
}

}  // namespace aha::nn
