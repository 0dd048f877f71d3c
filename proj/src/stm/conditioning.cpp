#include "aha/stm/conditioning.hpp"

#include <algorithm>

#include "aha/errors.hpp"
#include "aha/nn/topk.hpp"

namespace aha::stm {

namespace {

constexpr double kTieNudge = 1e-6;

}  // namespace

nn::Vector condition_memorise(const nn::Vector& x) {
    if (!x.allFinite() || (x.size() > 0 && x.minCoeff() < 0.0))
        throw InvalidArgument("condition_memorise: input must be finite and non-negative");
    return x.unaryExpr([](double v) { return v > 0.0 ? 1.0 : -1.0; });
}

nn::Vector condition_retrieve(const nn::Vector& y, const ConditioningParams& params) {
    if (params.k <= 0 || params.k >= y.size()) throw InvalidArgument("condition_retrieve: k must be in [1, n)");
    if (!(params.gain > 0.0)) throw InvalidArgument("condition_retrieve: gain must be positive");
    if (!y.allFinite() || y.minCoeff() < 0.0)
        throw InvalidArgument("condition_retrieve: input must be finite and non-negative");
    const double total = y.sum();
    if (!(total > 0.0)) throw DegenerateCue("condition_retrieve: all-zero input");

    const nn::Vector v = (2.0 * params.gain / total) * y.array() - 1.0;
    const std::vector<int> order = nn::topk_indices(v, params.k + 1);
    const double kth = v(order[params.k - 1]);
    const double next = v(order[params.k]);
    nn::Vector out = v.array() - 0.5 * (kth + next);
    if (kth == next) {
        for (int j = 0; j < params.k; ++j) out(order[j]) = std::max(out(order[j]), kTieNudge);
    }
    return out.cwiseMax(-1.0).cwiseMin(1.0);
}

nn::Matrix condition_retrieve_batch(const nn::Matrix& y, const ConditioningParams& params) {
    nn::Matrix out(y.rows(), y.cols());
    for (Eigen::Index c = 0; c < y.cols(); ++c) out.col(c) = condition_retrieve(y.col(c), params);
    return out;
}

}  // namespace aha::stm
