#include "aha/vc/interest_filter.hpp"

#include <algorithm>

#include "aha/nn/conv.hpp"
#include "aha/nn/kernels.hpp"
#include "aha/nn/topk.hpp"

namespace aha::vc {

namespace {

// Responses at or below this are treated as flat (zero-sum kernel round-off).
constexpr double kFlat = 1e-9;

// Positive responses that are the maximum of their nms window.
nn::Vector local_maxima(const nn::Matrix& response, int size, int stride) {
    const auto rows = static_cast<int>(response.rows());
    const auto cols = static_cast<int>(response.cols());
    const int half = size / 2;
    nn::Vector kept = nn::Vector::Zero(response.size());
    for (int r = 0; r < rows; r += stride) {
        for (int c = 0; c < cols; c += stride) {
            const double v = response(r, c);
            if (v <= kFlat) continue;
            bool is_max = true;
            for (int y = std::max(0, r - half); y <= std::min(rows - 1, r + half) && is_max; ++y)
                for (int x = std::max(0, c - half); x <= std::min(cols - 1, c + half); ++x)
                    if (response(y, x) > v) {
                        is_max = false;
                        break;
                    }
            if (is_max) kept[r * cols + c] = v;
        }
    }
    return kept;
}

void mark_strongest(const nn::Vector& candidates, int k, nn::Matrix& keypoints) {
    const auto cols = keypoints.cols();
    const int available = static_cast<int>((candidates.array() > kFlat).count());
    for (int idx : nn::topk_indices(candidates, std::min(k, available))) {
        keypoints(idx / cols, idx % cols) += 1.0;
    }
}

}  // namespace

nn::Matrix interest_keypoints(const nn::Matrix& image, const InterestConfig& cfg) {
    const nn::Matrix response = nn::correlate_same(image, nn::dog_kernel(cfg.dog), nn::Padding::replicate);
    nn::Matrix keypoints = nn::Matrix::Zero(image.rows(), image.cols());
    mark_strongest(local_maxima(response, cfg.nms_size, cfg.nms_stride), cfg.k_features, keypoints);
    mark_strongest(local_maxima(-response, cfg.nms_size, cfg.nms_stride), cfg.k_features, keypoints);
    return keypoints;
}

nn::Matrix interest_mask(const nn::Matrix& image, const InterestConfig& cfg) {
    const nn::Matrix smooth = nn::gaussian_kernel(cfg.smooth_size, cfg.smooth_std, nn::KernelNorm::unit_peak);
    return nn::correlate_same(interest_keypoints(image, cfg), smooth).cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace aha::vc
