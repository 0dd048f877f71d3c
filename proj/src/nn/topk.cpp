#include "aha/nn/topk.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "aha/errors.hpp"

namespace aha::nn {

std::vector<int> topk_indices(const Vector& values, int k) {
    const auto n = static_cast<int>(values.size());
    if (k < 0 || k > n) {
        throw InvalidArgument("topk: k=" + std::to_string(k) + " exceeds length " + std::to_string(n));
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto ranks_before = [&](int a, int b) {
        if (values[a] != values[b]) return values[a] > values[b];
        return a < b;
    };
    std::partial_sort(order.begin(), order.begin() + k, order.end(), ranks_before);
    order.resize(k);
    return order;
}

Vector topk_mask(const Vector& values, int k) {
    Vector mask = Vector::Zero(values.size());
    for (int i : topk_indices(values, k)) mask[i] = 1.0;
    return mask;
}

}  // namespace aha::nn
