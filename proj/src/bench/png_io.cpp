#include "aha/bench/png_io.hpp"

#include <png.h>

#include <cstring>

#include "aha/errors.hpp"

namespace aha::bench {

vc::ImageSample read_png_gray(const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str())) {
        throw IngestionError("unreadable PNG " + path.string() + ": " + image.message);
    }
    image.format = PNG_FORMAT_GRAY;
    vc::ImageSample out;
    out.rows = static_cast<int>(image.height);
    out.cols = static_cast<int>(image.width);
    out.pixels.resize(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
        const std::string message = image.message;
        png_image_free(&image);
        throw IngestionError("unreadable PNG " + path.string() + ": " + message);
    }
    return out;
}

void write_png_gray(const std::filesystem::path& path, const vc::ImageSample& sample) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(sample.cols);
    image.height = static_cast<png_uint_32>(sample.rows);
    image.format = PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&image, path.c_str(), 0, sample.pixels.data(), 0, nullptr)) {
        throw IngestionError("cannot write PNG " + path.string() + ": " + image.message);
    }
}

}  // namespace aha::bench
