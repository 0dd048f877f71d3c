#include "aha/bench/corruption.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aha/errors.hpp"

namespace aha::bench {

namespace {

double capped(double level, const char* who) {
    if (!(level >= 0.0)) throw InvalidArgument(std::string(who) + ": level must be non-negative");
    return std::min(level, kMaxCorruption);
}

}  // namespace

std::string to_string(CorruptionKind kind) {
    switch (kind) {
        case CorruptionKind::none: return "none";
        case CorruptionKind::occlusion: return "occlusion";
        case CorruptionKind::noise: return "noise";
    }
    return "?";
}

CorruptionKind parse_corruption(const std::string& name) {
    if (name == "none") return CorruptionKind::none;
    if (name == "occlusion") return CorruptionKind::occlusion;
    if (name == "noise") return CorruptionKind::noise;
    throw InvalidArgument("unknown corruption '" + name + "'");
}

nn::Matrix occlude(const nn::Matrix& image, double diameter_frac, Engine& rng) {
    const double frac = capped(diameter_frac, "occlude");
    const double ux = uniform01(rng);
    const double uy = uniform01(rng);
    nn::Matrix out = image;
    const double side = static_cast<double>(std::min(image.rows(), image.cols()));
    const double r = 0.5 * frac * side;
    if (r <= 0.0) return out;

    const double cx = r + ux * (static_cast<double>(image.cols()) - 2.0 * r);
    const double cy = r + uy * (static_cast<double>(image.rows()) - 2.0 * r);
    for (Eigen::Index y = 0; y < image.rows(); ++y) {
        const double dy = static_cast<double>(y) + 0.5 - cy;
        for (Eigen::Index x = 0; x < image.cols(); ++x) {
            const double dx = static_cast<double>(x) + 0.5 - cx;
            if (dx * dx + dy * dy <= r * r) out(y, x) = 0.0;
        }
    }
    return out;
}

nn::Matrix add_noise(const nn::Matrix& image, double area_frac, Engine& rng) {
    const double frac = capped(area_frac, "add_noise");
    const auto n = static_cast<std::size_t>(image.size());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    aha::shuffle(order.begin(), order.end(), rng);
    std::vector<double> values(n);
    for (auto& v : values) v = uniform01(rng);

    nn::Matrix out = image;
    const auto count = static_cast<std::size_t>(std::llround(frac * static_cast<double>(n)));
    for (std::size_t i = 0; i < count; ++i) out.data()[order[i]] = values[i];
    return out;
}

nn::Matrix corrupt(const nn::Matrix& image, const CorruptionSpec& spec) {
    Engine rng(spec.rng_seed);
    switch (spec.kind) {
        case CorruptionKind::none: return image;
        case CorruptionKind::occlusion: return occlude(image, spec.level, rng);
        case CorruptionKind::noise: return add_noise(image, spec.level, rng);
    }
    return image;
}

std::vector<double> corruption_levels(int increments, double max_level) {
    if (increments < 0) throw InvalidArgument("corruption_levels: negative increments");
    if (!(max_level >= 0.0) || max_level > kMaxCorruption)
        throw InvalidArgument("corruption_levels: max_level must be in [0, 0.98]");
    std::vector<double> levels{0.0};
    for (int i = 1; i <= increments; ++i) levels.push_back(max_level * i / increments);
    return levels;
}

}  // namespace aha::bench
