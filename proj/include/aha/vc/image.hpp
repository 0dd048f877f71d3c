#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aha/nn/types.hpp"
#include "aha/vc/config.hpp"

namespace aha::vc {

// How strokes are drawn in the stored pixels. Omniglot PNGs are dark
// strokes on a light background.
enum class Polarity { dark_on_light, light_on_dark };

/// An 8-bit grayscale image (row-major) plus its dataset identity.
struct ImageSample {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels;
    Polarity polarity = Polarity::dark_on_light;
    std::string alphabet;
    std::string character;
    int drawer = 0;

    std::uint8_t at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

/// Bilinear (triangle filter) resampling with pixel-centre alignment. When
/// downscaling the filter is stretched by the scale factor, as in PIL.
nn::Matrix resize_bilinear(const nn::Matrix& image, int out_rows, int out_cols);

/// Maps strokes to 1 and background to 0, then resizes by cfg.resize_factor
/// (105 -> 52 with the defaults). Throws InvalidArgument if the sample is not
/// source_size x source_size.
nn::Matrix preprocess(const ImageSample& raw, const VcConfig& cfg = {});

// Row-major flattening, the pixel order used for reconstruction targets.
nn::Vector flatten(const nn::Matrix& image);
nn::Matrix unflatten(const nn::Vector& pixels, int rows, int cols);

}  // namespace aha::vc
