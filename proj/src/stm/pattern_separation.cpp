#include "aha/stm/pattern_separation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aha/errors.hpp"
#include "aha/nn/topk.hpp"
#include "aha/rng.hpp"

namespace aha::stm {

nn::Vector SparsePattern::support() const {
    nn::Vector s = nn::Vector::Zero(values.size());
    for (int i : active) s(i) = 1.0;
    return s;
}

PsLayer ps_init(int input_dim, std::uint64_t seed, const PsConfig& config) {
    if (input_dim <= 0 || config.units <= 0) throw InvalidArgument("ps_init: empty layer");
    if (config.k <= 0 || config.k > config.units) throw InvalidArgument("ps_init: k must be in [1, units]");
    if (config.inhibition_decay < 0.0 || config.inhibition_decay > 1.0)
        throw InvalidArgument("ps_init: inhibition_decay must be in [0, 1]");
    if (config.knockout_rate < 0.0 || config.knockout_rate >= 1.0)
        throw InvalidArgument("ps_init: knockout_rate must be in [0, 1)");

    PsLayer layer;
    layer.config = config;
    layer.weights.resize(config.units, input_dim);
    layer.inhibition = nn::Vector::Zero(config.units);

    Engine rng(seed);
    for (int u = 0; u < config.units; ++u)
        for (int i = 0; i < input_dim; ++i) layer.weights(u, i) = uniform01(rng);

    const int knocked = static_cast<int>(std::floor(config.knockout_rate * input_dim));
    std::vector<int> idx(input_dim);
    for (int u = 0; u < config.units; ++u) {
        std::iota(idx.begin(), idx.end(), 0);
        // Partial Fisher-Yates: the first `knocked` slots form a uniform subset.
        for (int j = 0; j < knocked; ++j) {
            const int pick = j + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(input_dim - j)));
            std::swap(idx[j], idx[pick]);
            layer.weights(u, idx[j]) = 0.0;
        }
    }
    return layer;
}

void clear_inhibition(PsLayer& layer) { layer.inhibition.setZero(); }

std::vector<SparsePattern> ps_forward(PsLayer& layer, const nn::Matrix& batch, bool sequential_inhibition) {
    if (batch.rows() != layer.weights.cols()) throw InvalidArgument("ps_forward: input dimension mismatch");
    if (!batch.allFinite()) throw InvalidArgument("ps_forward: non-finite input");

    const nn::Matrix response = layer.weights * batch;
    std::vector<SparsePattern> out;
    out.reserve(static_cast<std::size_t>(batch.cols()));
    for (Eigen::Index c = 0; c < batch.cols(); ++c) {
        nn::Vector r = response.col(c);
        if (sequential_inhibition) r = r.cwiseProduct((1.0 - layer.inhibition.array()).matrix());

        SparsePattern p;
        p.active = nn::topk_indices(r, layer.config.k);
        p.values = nn::Vector::Zero(r.size());
        for (int i : p.active) p.values(i) = r(i);
        out.push_back(std::move(p));

        if (sequential_inhibition) {
            for (int i : out.back().active) layer.inhibition(i) = 1.0;
            layer.inhibition *= layer.config.inhibition_decay;
        }
    }
    return out;
}

int overlap(const SparsePattern& a, const SparsePattern& b) {
    int n = 0;
    for (int i : a.active) n += std::count(b.active.begin(), b.active.end(), i) > 0 ? 1 : 0;
    return n;
}

}  // namespace aha::stm
