#pragma once

#include <filesystem>

#include "aha/vc/image.hpp"

namespace aha::bench {

// Reads any PNG as 8-bit grayscale. Throws IngestionError naming the path.
vc::ImageSample read_png_gray(const std::filesystem::path& path);

void write_png_gray(const std::filesystem::path& path, const vc::ImageSample& image);

}  // namespace aha::bench
