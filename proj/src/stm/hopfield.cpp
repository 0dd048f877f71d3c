#include "aha/stm/hopfield.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "aha/errors.hpp"
#include "aha/rng.hpp"

namespace aha::stm {

namespace {

constexpr double kRidge = 1e-6;

}  // namespace

HopfieldNet make_hopfield(const HopfieldConfig& config, std::uint64_t seed) {
    if (config.units <= 0) throw InvalidArgument("make_hopfield: units must be positive");
    if (config.cells_per_step <= 0 || config.iterations < 0)
        throw InvalidArgument("make_hopfield: bad update schedule");
    if (!(config.gain > 0.0)) throw InvalidArgument("make_hopfield: gain must be positive");

    HopfieldNet net;
    net.config = config;
    net.weights = nn::Matrix::Zero(config.units, config.units);
    net.update_order.resize(static_cast<std::size_t>(config.units));
    std::iota(net.update_order.begin(), net.update_order.end(), 0);
    Engine rng(seed);
    aha::shuffle(net.update_order.begin(), net.update_order.end(), rng);
    return net;
}

void pc_store(HopfieldNet& net, const std::vector<nn::Vector>& patterns) {
    const int n = net.config.units;
    const int m = static_cast<int>(patterns.size());
    if (m == 0) throw InvalidArgument("pc_store: no patterns");
    if (m > n) throw DegeneratePattern("pc_store: more patterns than units");

    nn::Matrix x(n, m);
    for (int j = 0; j < m; ++j) {
        if (patterns[j].size() != n) throw InvalidArgument("pc_store: pattern length mismatch");
        for (int i = 0; i < n; ++i) {
            const double v = patterns[j](i);
            if (v != 1.0 && v != -1.0) throw InvalidArgument("pc_store: patterns must be bipolar");
        }
        x.col(j) = patterns[j];
    }

    Eigen::ColPivHouseholderQR<nn::Matrix> qr(x);
    if (qr.rank() < m) throw DegeneratePattern("pc_store: patterns are linearly dependent");

    const double inv_n = 1.0 / n;
    nn::Matrix c = inv_n * (x.transpose() * x);
    c.diagonal().array() += kRidge;
    const nn::Matrix c_inv_xt = c.ldlt().solve(x.transpose());
    net.weights = inv_n * (x * c_inv_xt);
    net.weights = 0.5 * (net.weights + net.weights.transpose()).eval();
    net.weights.diagonal().setZero();
    net.stored = patterns;
}

nn::Vector pc_converge(const HopfieldNet& net, const nn::Vector& cue, const ConvergeObserver& observer) {
    const int n = net.config.units;
    if (cue.size() != n) throw InvalidArgument("pc_converge: cue length mismatch");
    if (!cue.allFinite() || cue.cwiseAbs().maxCoeff() > 1.0)
        throw InvalidArgument("pc_converge: cue must lie in [-1, 1]");

    nn::Vector s = cue;
    std::size_t cursor = 0;
    for (int it = 0; it < net.config.iterations; ++it) {
        for (int c = 0; c < net.config.cells_per_step; ++c) {
            const int i = net.update_order[cursor];
            cursor = (cursor + 1) % net.update_order.size();
            s(i) = std::tanh(net.config.gain * net.weights.row(i).dot(s));
        }
        if (observer) observer(it, s);
    }
    return s;
}

double hopfield_energy(const HopfieldNet& net, const nn::Vector& state) {
    return -0.5 * state.dot(net.weights * state);
}

}  // namespace aha::stm
