#pragma once

#include "aha/nn/kernels.hpp"

namespace aha::vc {

struct InterestConfig {
    nn::KernelSpec dog{7, 0.82, 1.6};
    int nms_size = 5;
    int nms_stride = 1;
    int smooth_size = 15;
    double smooth_std = 2.375;
    int k_features = 20;
};

// Defaults are the reported configuration; pretraining-only values carry
// the _pretrain suffix.
struct VcConfig {
    int source_size = 105;
    double resize_factor = 0.5;
    int filters = 121;
    int filter_rows = 10;
    int filter_cols = 10;
    int stride_pretrain = 5;
    int stride_eval = 1;
    int k_pretrain = 1;
    int k_eval = 4;
    double learning_rate = 0.001;
    int pretrain_batches = 2000;
    int pretrain_batch_size = 128;
    int pool_size = 4;
    int pool_stride = 4;
    bool interest_filter = true;
    InterestConfig interest{};

    int image_size() const { return static_cast<int>(source_size * resize_factor); }
};

}  // namespace aha::vc
