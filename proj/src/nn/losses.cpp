#include "aha/nn/losses.hpp"

#include <algorithm>
#include <cmath>

#include "aha/errors.hpp"

namespace aha::nn {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument(std::string(what) + ": shape mismatch");
    }
}

double clamp_prob(double p) { return std::clamp(p, kXentClamp, 1.0 - kXentClamp); }

}  // namespace

double loss_mse(const Vector& a, const Vector& b) {
    require_same_shape(a, b, "loss_mse");
    if (a.size() == 0) return 0.0;
    return (a - b).squaredNorm() / static_cast<double>(a.size());
}

double loss_multilabel_xent(const Vector& pred, const Vector& target) {
    return batch_loss(Loss::multilabel_xent, pred, target);
}

double batch_loss(Loss loss, const Matrix& pred, const Matrix& target) {
    require_same_shape(pred, target, "batch_loss");
    const auto n = static_cast<double>(pred.size());
    if (n == 0) return 0.0;
    if (loss == Loss::mse) return (pred - target).squaredNorm() / n;

    double sum = 0.0;
    for (Eigen::Index j = 0; j < pred.cols(); ++j) {
        for (Eigen::Index i = 0; i < pred.rows(); ++i) {
            const double p = clamp_prob(pred(i, j));
            const double t = target(i, j);
            sum -= t * std::log(p) + (1.0 - t) * std::log(1.0 - p);
        }
    }
    return sum / n;
}

Matrix batch_loss_gradient(Loss loss, const Matrix& pred, const Matrix& target) {
    require_same_shape(pred, target, "batch_loss_gradient");
    const auto n = static_cast<double>(pred.size());
    if (loss == Loss::mse) return 2.0 * (pred - target) / n;

    Matrix grad(pred.rows(), pred.cols());
    for (Eigen::Index j = 0; j < pred.cols(); ++j) {
        for (Eigen::Index i = 0; i < pred.rows(); ++i) {
            const double raw = pred(i, j);
            // Clamped region is flat.
            if (raw < kXentClamp || raw > 1.0 - kXentClamp) {
                grad(i, j) = 0.0;
                continue;
            }
            const double t = target(i, j);
            grad(i, j) = (-t / raw + (1.0 - t) / (1.0 - raw)) / n;
        }
    }
    return grad;
}

}  // namespace aha::nn
