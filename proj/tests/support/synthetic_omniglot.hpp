#pragma once

// Procedural stand-in for Omniglot: each character is a few smooth strokes;
// each drawer redraws it with jittered control points. Images are binary,
// dark strokes on a light background, 105x105, like the real dataset.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "aha/bench/omniglot.hpp"
#include "aha/rng.hpp"
#include "aha/vc/image.hpp"

namespace synth {

struct Glyph {
    std::vector<std::vector<std::pair<double, double>>> strokes;  // control points (x, y)
};

Glyph random_glyph(aha::Engine& rng);

// One drawer's rendition of a glyph.
aha::vc::ImageSample render(const Glyph& glyph, aha::Engine& rng, double jitter = 3.0, int size = 105);

struct DatasetShape {
    int background_alphabets = 3;
    int evaluation_alphabets = 2;
    int characters_per_alphabet = 20;
    int drawers = aha::bench::kExemplarsPerCharacter;
};

aha::bench::OmniglotStore make_store(const DatasetShape& shape, std::uint64_t seed);

// Writes the store as PNGs in the standard directory layout.
void write_store(const aha::bench::OmniglotStore& store, const std::filesystem::path& root);

// Dataset shared by tests; generated once under the build tree.
const std::filesystem::path& shared_dataset_root();

}  // namespace synth
