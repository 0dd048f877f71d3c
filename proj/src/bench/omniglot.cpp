#include "aha/bench/omniglot.hpp"

#include <algorithm>
#include <set>

#include "aha/bench/png_io.hpp"
#include "aha/errors.hpp"

namespace aha::bench {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (directories ? entry.is_directory() : entry.is_regular_file()) {
            if (!directories && entry.path().extension() != ".png") continue;
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int parse_drawer(const fs::path& file) {
    const std::string stem = file.stem().string();
    const auto underscore = stem.rfind('_');
    if (underscore == std::string::npos || underscore + 1 == stem.size()) {
        throw IngestionError("cannot parse drawer id from " + file.string());
    }
    try {
        return std::stoi(stem.substr(underscore + 1));
    } catch (const std::exception&) {
        throw IngestionError("cannot parse drawer id from " + file.string());
    }
}

}  // namespace

std::vector<Alphabet> load_split(const fs::path& split_dir, int image_size) {
    if (!fs::is_directory(split_dir)) throw IngestionError("missing dataset split " + split_dir.string());
    std::vector<Alphabet> split;
    for (const auto& alphabet_dir : sorted_entries(split_dir, true)) {
        Alphabet alphabet{alphabet_dir.filename().string(), {}};
        for (const auto& character_dir : sorted_entries(alphabet_dir, true)) {
            Character character{character_dir.filename().string(), {}};
            for (const auto& file : sorted_entries(character_dir, false)) {
                vc::ImageSample sample = read_png_gray(file);
                if (sample.rows != image_size || sample.cols != image_size) {
                    throw IngestionError("unexpected image size " + std::to_string(sample.rows) + "x" +
                                         std::to_string(sample.cols) + " in " + file.string());
                }
                sample.polarity = vc::Polarity::dark_on_light;
                sample.alphabet = alphabet.name;
                sample.character = character.name;
                sample.drawer = parse_drawer(file);
                character.exemplars.push_back(std::move(sample));
            }
            if (character.exemplars.size() != static_cast<std::size_t>(kExemplarsPerCharacter)) {
                throw IngestionError("expected " + std::to_string(kExemplarsPerCharacter) + " exemplars, found " +
                                     std::to_string(character.exemplars.size()) + " in " + character_dir.string());
            }
            std::stable_sort(character.exemplars.begin(), character.exemplars.end(),
                             [](const auto& a, const auto& b) { return a.drawer < b.drawer; });
            alphabet.characters.push_back(std::move(character));
        }
        if (!alphabet.characters.empty()) split.push_back(std::move(alphabet));
    }
    if (split.empty()) throw IngestionError("no alphabets found in " + split_dir.string());
    return split;
}

OmniglotStore load_omniglot(const fs::path& root, int image_size) {
    if (!fs::is_directory(root)) throw IngestionError("dataset root not found: " + root.string());
    OmniglotStore store;
    store.background = load_split(root / kBackgroundDir, image_size);
    store.evaluation = load_split(root / kEvaluationDir, image_size);

    std::set<std::string> seen;
    for (const auto& a : store.background)
        for (const auto& c : a.characters) seen.insert(a.name + "/" + c.name);
    for (const auto& a : store.evaluation)
        for (const auto& c : a.characters)
            if (seen.count(a.name + "/" + c.name)) {
                throw IngestionError("character " + a.name + "/" + c.name + " appears in both splits under " +
                                     root.string());
            }
    return store;
}

std::vector<const vc::ImageSample*> all_images(const std::vector<Alphabet>& split) {
    std::vector<const vc::ImageSample*> out;
    for (const auto& a : split)
        for (const auto& c : a.characters)
            for (const auto& e : c.exemplars) out.push_back(&e);
    return out;
}

}  // namespace aha::bench
