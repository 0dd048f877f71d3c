#include "aha/nn/dense_net.hpp"

#include <cmath>
#include <string>

#include "aha/errors.hpp"
#include "aha/rng.hpp"

namespace aha::nn {

namespace {

Matrix uniform_matrix(int rows, int cols, double bound, Engine& rng) {
    Matrix m(rows, cols);
    // Column-major fill order is part of the determinism contract.
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = uniform(rng, -bound, bound);
    return m;
}

DenseNet2Gradients zeros_like(const DenseNet2& net) {
    return {Matrix::Zero(net.w1.rows(), net.w1.cols()), Vector::Zero(net.b1.size()),
            Matrix::Zero(net.w2.rows(), net.w2.cols()), Vector::Zero(net.b2.size())};
}

template <typename Param, typename Grad>
void adam_update(Param& param, const Grad& grad, Grad& m, Grad& v, const AdamConfig& adam,
                 double lr, double correction1, double correction2) {
    m.array() = adam.beta1 * m.array() + (1.0 - adam.beta1) * grad.array();
    v.array() = adam.beta2 * v.array() + (1.0 - adam.beta2) * grad.array().square();
    param.array() -= lr * (m.array() / correction1) /
                     ((v.array() / correction2).sqrt() + adam.epsilon);
}

}  // namespace

DenseNet2 make_dense_net(const DenseNet2Config& config, std::uint64_t seed) {
    if (config.inputs <= 0 || config.hidden <= 0 || config.outputs <= 0) {
        throw InvalidArgument("DenseNet2: layer sizes must be positive");
    }
    DenseNet2 net;
    net.config = config;
    reset(net, seed);
    return net;
}

void reset(DenseNet2& net, std::uint64_t seed) {
    const auto& c = net.config;
    Engine rng(seed);
    net.w1 = uniform_matrix(c.hidden, c.inputs, 1.0 / std::sqrt(static_cast<double>(c.inputs)), rng);
    net.b1 = Vector::Zero(c.hidden);
    net.w2 = uniform_matrix(c.outputs, c.hidden, 1.0 / std::sqrt(static_cast<double>(c.hidden)), rng);
    net.b2 = Vector::Zero(c.outputs);
    net.optimizer.reset();
}

DenseForward dense_forward(const DenseNet2& net, const Matrix& inputs) {
    if (inputs.rows() != net.w1.cols()) {
        throw InvalidArgument("dense_forward: input has " + std::to_string(inputs.rows()) +
                              " rows, network expects " + std::to_string(net.w1.cols()));
    }
    DenseForward f;
    f.hidden_pre.noalias() = net.w1 * inputs;
    f.hidden_pre.colwise() += net.b1;
    f.hidden = activate(net.config.hidden_activation, f.hidden_pre);
    f.out_pre.noalias() = net.w2 * f.hidden;
    f.out_pre.colwise() += net.b2;
    f.out = activate(net.config.output_activation, f.out_pre);
    return f;
}

Vector dense_output(const DenseNet2& net, const Vector& input) {
    return dense_forward(net, input).out.col(0);
}

double compute_gradients(const DenseNet2& net, const Matrix& inputs, const Matrix& targets,
                         Loss loss, DenseNet2Gradients& grads) {
    const DenseForward f = dense_forward(net, inputs);
    if (targets.rows() != f.out.rows() || targets.cols() != f.out.cols()) {
        throw InvalidArgument("train_step: targets do not match network output shape");
    }
    const double value = batch_loss(loss, f.out, targets);

    Matrix d_out_pre;
    if (loss == Loss::multilabel_xent && net.config.output_activation == Activation::sigmoid) {
        // Fused sigmoid + cross-entropy: stays informative when outputs saturate.
        d_out_pre = (f.out - targets) / static_cast<double>(f.out.size());
    } else {
        d_out_pre = (batch_loss_gradient(loss, f.out, targets).array() *
                     activation_derivative(net.config.output_activation, f.out_pre, f.out).array())
                        .matrix();
    }
    grads.w2.noalias() = d_out_pre * f.hidden.transpose();
    grads.w2 += net.config.l2 * net.w2;
    grads.b2 = d_out_pre.rowwise().sum();

    Matrix d_hidden_pre;
    d_hidden_pre.noalias() = net.w2.transpose() * d_out_pre;
    d_hidden_pre.array() *=
        activation_derivative(net.config.hidden_activation, f.hidden_pre, f.hidden).array();
    grads.w1.noalias() = d_hidden_pre * inputs.transpose();
    grads.w1 += net.config.l2 * net.w1;
    grads.b1 = d_hidden_pre.rowwise().sum();
    return value;
}

double train_step(DenseNet2& net, const Matrix& inputs, const Matrix& targets, Loss loss) {
    DenseNet2Gradients grads;
    const double value = compute_gradients(net, inputs, targets, loss, grads);
    if (!std::isfinite(value)) {
        throw TrainingDiverged("train_step: loss became non-finite");
    }
    if (!net.optimizer) net.optimizer = AdamState{zeros_like(net), zeros_like(net), 0};

    auto& s = *net.optimizer;
    const auto& adam = net.config.adam;
    ++s.step;
    const double c1 = 1.0 - std::pow(adam.beta1, static_cast<double>(s.step));
    const double c2 = 1.0 - std::pow(adam.beta2, static_cast<double>(s.step));
    const double lr = net.config.learning_rate;
    adam_update(net.w1, grads.w1, s.first.w1, s.second.w1, adam, lr, c1, c2);
    adam_update(net.b1, grads.b1, s.first.b1, s.second.b1, adam, lr, c1, c2);
    adam_update(net.w2, grads.w2, s.first.w2, s.second.w2, adam, lr, c1, c2);
    adam_update(net.b2, grads.b2, s.first.b2, s.second.b2, adam, lr, c1, c2);
    return value;
}

void release_optimizer(DenseNet2& net) { net.optimizer.reset(); }

}  // namespace aha::nn
