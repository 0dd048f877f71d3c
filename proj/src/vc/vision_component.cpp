#include "aha/vc/vision_component.hpp"

#include "aha/errors.hpp"
#include "aha/vc/interest_filter.hpp"
#include "aha/vc/scae.hpp"

namespace aha::vc {

nn::Matrix crop_center(const nn::Matrix& mask, int rows, int cols) {
    if (rows > mask.rows() || cols > mask.cols()) throw InvalidArgument("crop_center: crop larger than source");
    const auto top = (mask.rows() - rows) / 2;
    const auto left = (mask.cols() - cols) / 2;
    return mask.block(top, left, rows, cols);
}

FeatureVector vc_forward(const nn::Matrix& image, const nn::ConvLayer& layer, const VcConfig& cfg) {
    if (!layer.trained) throw InvalidState("vc_forward: filters have not been trained or loaded");
    nn::ConvLayer eval = layer;
    eval.stride = cfg.stride_eval;
    nn::Volume code = scae_encode(image, eval, cfg.k_eval, false);
    code.data = code.data.cwiseMax(0.0);

    if (cfg.interest_filter) {
        const nn::Matrix mask = crop_center(interest_mask(image, cfg.interest), code.rows, code.cols);
        for (int r = 0; r < code.rows; ++r)
            for (int c = 0; c < code.cols; ++c) code.data.col(r * code.cols + c) *= mask(r, c);
    }

    const nn::Volume pooled = nn::max_pool(code, cfg.pool_size, cfg.pool_stride);
    FeatureVector fv;
    fv.channels = pooled.channels;
    fv.rows = pooled.rows;
    fv.cols = pooled.cols;
    fv.values.resize(pooled.data.size());
    Eigen::Index i = 0;
    for (int ch = 0; ch < pooled.channels; ++ch)
        for (Eigen::Index p = 0; p < pooled.data.cols(); ++p) fv.values[i++] = pooled.data(ch, p);
    return fv;
}

nn::Matrix stack_features(const std::vector<FeatureVector>& features) {
    if (features.empty()) return {};
    nn::Matrix m(features.front().values.size(), static_cast<Eigen::Index>(features.size()));
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].values.size() != m.rows()) throw InvalidArgument("stack_features: dimension mismatch");
        m.col(static_cast<Eigen::Index>(i)) = features[i].values;
    }
    return m;
}

}  // namespace aha::vc
