#include "aha/vc/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "aha/errors.hpp"

namespace aha::vc {

namespace {

// Triangle-filter weights for one axis. When shrinking, the filter support
// widens with the scale so every source pixel contributes (no aliasing).
std::vector<std::vector<std::pair<int, double>>> axis_weights(int in, int out) {
    const double scale = static_cast<double>(in) / out;
    const double support = std::max(scale, 1.0);
    std::vector<std::vector<std::pair<int, double>>> weights(static_cast<std::size_t>(out));
    for (int i = 0; i < out; ++i) {
        const double centre = (i + 0.5) * scale;
        const int lo = std::max(0, static_cast<int>(std::floor(centre - support)));
        const int hi = std::min(in - 1, static_cast<int>(std::ceil(centre + support)));
        double total = 0.0;
        for (int j = lo; j <= hi; ++j) {
            const double w = std::max(0.0, 1.0 - std::abs(j + 0.5 - centre) / support);
            if (w > 0.0) {
                weights[i].emplace_back(j, w);
                total += w;
            }
        }
        for (auto& [j, w] : weights[i]) w /= total;
    }
    return weights;
}

}  // namespace

nn::Matrix resize_bilinear(const nn::Matrix& image, int out_rows, int out_cols) {
    if (out_rows < 1 || out_cols < 1) throw InvalidArgument("resize_bilinear: output size must be positive");
    const auto row_w = axis_weights(static_cast<int>(image.rows()), out_rows);
    const auto col_w = axis_weights(static_cast<int>(image.cols()), out_cols);
    nn::Matrix rows_done = nn::Matrix::Zero(out_rows, image.cols());
    for (int r = 0; r < out_rows; ++r)
        for (const auto& [j, w] : row_w[r]) rows_done.row(r) += w * image.row(j);
    nn::Matrix out = nn::Matrix::Zero(out_rows, out_cols);
    for (int c = 0; c < out_cols; ++c)
        for (const auto& [j, w] : col_w[c]) out.col(c) += w * rows_done.col(j);
    return out;
}

nn::Matrix preprocess(const ImageSample& raw, const VcConfig& cfg) {
    if (raw.rows != cfg.source_size || raw.cols != cfg.source_size ||
        raw.pixels.size() != static_cast<std::size_t>(raw.rows) * raw.cols) {
        throw InvalidArgument("preprocess: expected a " + std::to_string(cfg.source_size) + "x" +
                              std::to_string(cfg.source_size) + " image, got " + std::to_string(raw.rows) + "x" +
                              std::to_string(raw.cols));
    }
    nn::Matrix unit(raw.rows, raw.cols);
    for (int r = 0; r < raw.rows; ++r) {
        for (int c = 0; c < raw.cols; ++c) {
            const double v = raw.at(r, c) / 255.0;
            unit(r, c) = raw.polarity == Polarity::dark_on_light ? 1.0 - v : v;
        }
    }
    const int size = cfg.image_size();
    return resize_bilinear(unit, size, size);
}

nn::Vector flatten(const nn::Matrix& image) {
    nn::Vector v(image.size());
    Eigen::Index i = 0;
    for (Eigen::Index r = 0; r < image.rows(); ++r)
        for (Eigen::Index c = 0; c < image.cols(); ++c) v[i++] = image(r, c);
    return v;
}

nn::Matrix unflatten(const nn::Vector& pixels, int rows, int cols) {
    if (pixels.size() != static_cast<Eigen::Index>(rows) * cols) {
        throw InvalidArgument("unflatten: pixel count does not match shape");
    }
    nn::Matrix image(rows, cols);
    Eigen::Index i = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) image(r, c) = pixels[i++];
    return image;
}

}  // namespace aha::vc
