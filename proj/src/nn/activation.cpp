#include "aha/nn/activation.hpp"

namespace aha::nn {

Matrix activate(Activation act, const Matrix& pre) {
    switch (act) {
        case Activation::identity:
            return pre;
        case Activation::leaky_relu:
            return pre.unaryExpr([](double x) { return x > 0.0 ? x : kLeakySlope * x; });
        case Activation::sigmoid:
            return pre.unaryExpr([](double x) { return 1.0 / (1.0 + std::exp(-x)); });
        case Activation::tanh:
            return pre.array().tanh().matrix();
    }
    return pre;
}

Matrix activation_derivative(Activation act, const Matrix& pre, const Matrix& post) {
    switch (act) {
        case Activation::identity:
            return Matrix::Ones(pre.rows(), pre.cols());
        case Activation::leaky_relu:
            return pre.unaryExpr([](double x) { return x > 0.0 ? 1.0 : kLeakySlope; });
        case Activation::sigmoid:
            return (post.array() * (1.0 - post.array())).matrix();
        case Activation::tanh:
            return (1.0 - post.array().square()).matrix();
    }
    return Matrix::Ones(pre.rows(), pre.cols());
}

std::string_view to_string(Activation act) {
    switch (act) {
        case Activation::identity: return "identity";
        case Activation::leaky_relu: return "leaky_relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::tanh: return "tanh";
    }
    return "?";
}

}  // namespace aha::nn
