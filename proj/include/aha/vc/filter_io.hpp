#pragma once

#include <filesystem>

#include "aha/nn/conv.hpp"

namespace aha::vc {

// Little-endian: "AHAF", u32 count, u32 rows, u32 cols, then count*rows*cols
// float32 values, each filter row-major.
void save_filters(const std::filesystem::path& path, const nn::ConvLayer& layer);

// The returned layer is marked trained; stride is left at 1.
nn::ConvLayer load_filters(const std::filesystem::path& path);

}  // namespace aha::vc
