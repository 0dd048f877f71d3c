#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aha/vc/image.hpp"

namespace aha::bench {

inline constexpr int kExemplarsPerCharacter = 20;

struct Character {
    std::string name;
    std::vector<vc::ImageSample> exemplars;  // sorted by drawer id
};

struct Alphabet {
    std::string name;
    std::vector<Character> characters;
};

/// Omniglot in its standard layout:
///   <root>/images_background/<alphabet>/<character>/<id>_<drawer>.png
///   <root>/images_evaluation/...
struct OmniglotStore {
    std::vector<Alphabet> background;
    std::vector<Alphabet> evaluation;
};

inline constexpr const char* kBackgroundDir = "images_background";
inline constexpr const char* kEvaluationDir = "images_evaluation";

/// Loads both splits. Throws IngestionError naming the offending path for a
/// missing split, an unreadable PNG, an image that is not 105x105, a
/// character without exactly 20 exemplars, or splits that share a character.
OmniglotStore load_omniglot(const std::filesystem::path& root, int image_size = 105);

// Loads one split directory.
std::vector<Alphabet> load_split(const std::filesystem::path& split_dir, int image_size = 105);

// Every image of a split, in alphabet/character/drawer order.
std::vector<const vc::ImageSample*> all_images(const std::vector<Alphabet>& split);

}  // namespace aha::bench
