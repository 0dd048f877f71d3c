#include "aha/vc/filter_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "aha/errors.hpp"

namespace aha::vc {

namespace {

constexpr std::array<char, 4> kMagic{'A', 'H', 'A', 'F'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

}  // namespace

void save_filters(const std::filesystem::path& path, const nn::ConvLayer& layer) {
    std::vector<std::uint8_t> bytes(kMagic.begin(), kMagic.end());
    put_u32(bytes, static_cast<std::uint32_t>(layer.count()));
    put_u32(bytes, static_cast<std::uint32_t>(layer.filter_rows));
    put_u32(bytes, static_cast<std::uint32_t>(layer.filter_cols));
    for (Eigen::Index f = 0; f < layer.filters.rows(); ++f)
        for (Eigen::Index i = 0; i < layer.filters.cols(); ++i)
            put_u32(bytes, std::bit_cast<std::uint32_t>(static_cast<float>(layer.filters(f, i))));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IngestionError("cannot write filter file " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IngestionError("failed writing filter file " + path.string());
}

nn::ConvLayer load_filters(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestionError("cannot open filter file " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic.data(), 4) != 0) {
        throw IngestionError("not an AHAF filter file: " + path.string());
    }
    const std::uint32_t count = get_u32(&bytes[4]);
    const std::uint32_t rows = get_u32(&bytes[8]);
    const std::uint32_t cols = get_u32(&bytes[12]);
    const std::size_t values = static_cast<std::size_t>(count) * rows * cols;
    if (count == 0 || rows == 0 || cols == 0 || bytes.size() != 16 + 4 * values) {
        throw IngestionError("filter file size does not match its header: " + path.string());
    }
    nn::ConvLayer layer;
    layer.filter_rows = static_cast<int>(rows);
    layer.filter_cols = static_cast<int>(cols);
    layer.filters.resize(count, rows * cols);
    const std::uint8_t* p = bytes.data() + 16;
    for (Eigen::Index f = 0; f < layer.filters.rows(); ++f)
        for (Eigen::Index i = 0; i < layer.filters.cols(); ++i, p += 4)
            layer.filters(f, i) = std::bit_cast<float>(get_u32(p));
    layer.trained = true;
    return layer;
}

}  // namespace aha::vc
