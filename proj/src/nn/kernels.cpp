#include "aha/nn/kernels.hpp"

#include <cmath>

#include "aha/errors.hpp"

namespace aha::nn {

Matrix gaussian_kernel(int size, double std, KernelNorm norm) {
    if (size < 1 || size % 2 == 0) throw InvalidArgument("gaussian_kernel: size must be odd and positive");
    if (!(std > 0.0)) throw InvalidArgument("gaussian_kernel: std must be positive");
    const int half = size / 2;
    Matrix k(size, size);
    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double y = r - half;
            const double x = c - half;
            k(r, c) = std::exp(-(x * x + y * y) / (2.0 * std * std));
        }
    }
    return norm == KernelNorm::unit_sum ? Matrix(k / k.sum()) : Matrix(k / k.maxCoeff());
}

Matrix dog_kernel(const KernelSpec& spec) {
    if (spec.size % 2 == 0) throw InvalidArgument("dog_kernel: size must be odd");
    if (!(spec.k_ratio > 0.0)) throw InvalidArgument("dog_kernel: k_ratio must be positive");
    Matrix dog = gaussian_kernel(spec.size, spec.std) - gaussian_kernel(spec.size, spec.k_ratio * spec.std);
    dog.array() -= dog.mean();
    return dog;
}

}  // namespace aha::nn
