#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aha/nn/types.hpp"
#include "aha/rng.hpp"

namespace aha::bench {

enum class CorruptionKind { none, occlusion, noise };

std::string to_string(CorruptionKind kind);
CorruptionKind parse_corruption(const std::string& name);

inline constexpr double kMaxCorruption = 0.98;

struct CorruptionSpec {
    CorruptionKind kind = CorruptionKind::none;
    double level = 0.0;
    std::uint64_t rng_seed = 0;
};

/// Sets a disc of diameter diameter_frac * side to 0. The disc lies wholly
/// inside the image; a pixel is covered when its centre is. Always draws
/// two numbers from `rng`, whatever the level.
nn::Matrix occlude(const nn::Matrix& image, double diameter_frac, Engine& rng);

/// Replaces round(area_frac * pixels) distinct random pixels with uniform
/// [0, 1) values. The pixel order and the replacement values are drawn in
/// full on every call, so higher levels extend lower ones.
nn::Matrix add_noise(const nn::Matrix& image, double area_frac, Engine& rng);

// Levels above kMaxCorruption are capped; negative levels throw.
nn::Matrix corrupt(const nn::Matrix& image, const CorruptionSpec& spec);

/// 0 followed by `increments` evenly spaced levels ending at `max_level`.
std::vector<double> corruption_levels(int increments = 10, double max_level = 0.96);

}  // namespace aha::bench
