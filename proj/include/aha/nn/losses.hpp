#pragma once

#include "aha/nn/types.hpp"

namespace aha::nn {

enum class Loss { mse, multilabel_xent };

inline constexpr double kXentClamp = 1e-7;

/// Mean of squared elementwise differences.
double loss_mse(const Vector& a, const Vector& b);

/// Mean binary cross-entropy over elements; predictions are clamped to
/// [kXentClamp, 1 - kXentClamp] before taking logs.
double loss_multilabel_xent(const Vector& pred, const Vector& target);

// Batch versions (samples are columns): mean over every element.
double batch_loss(Loss loss, const Matrix& pred, const Matrix& target);

// dL/dpred for batch_loss.
Matrix batch_loss_gradient(Loss loss, const Matrix& pred, const Matrix& target);

}  // namespace aha::nn
