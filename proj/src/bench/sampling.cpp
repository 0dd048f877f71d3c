#include "aha/bench/sampling.hpp"

#include <numeric>

#include "aha/errors.hpp"
#include "aha/rng.hpp"

namespace aha::bench {

namespace {

constexpr std::uint64_t kClassificationStream = 0xC1A55;
constexpr std::uint64_t kInstanceStream = 0x1257;

std::vector<int> iota_shuffled(int n, Engine& rng) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    aha::shuffle(v.begin(), v.end(), rng);
    return v;
}

}  // namespace

std::string to_string(Task task) { return task == Task::classification ? "classification" : "instance"; }

Task parse_task(const std::string& name) {
    if (name == "classification") return Task::classification;
    if (name == "instance") return Task::instance;
    throw InvalidArgument("unknown task '" + name + "'");
}

EpisodePair sample_run_classification(const OmniglotStore& store, int run_index, std::uint64_t seed) {
    if (run_index < 0) throw InvalidArgument("sample_run_classification: negative run index");
    std::vector<const Alphabet*> eligible;
    for (const auto& a : store.evaluation)
        if (static_cast<int>(a.characters.size()) >= kEpisodeSize) eligible.push_back(&a);
    if (eligible.empty())
        throw InvalidArgument("sample_run_classification: no evaluation alphabet has 20 characters");

    Engine rng(derive_seed(seed, {kClassificationStream, static_cast<std::uint64_t>(run_index)}));
    const Alphabet& alphabet = *eligible[uniform_index(rng, eligible.size())];
    const auto chars = iota_shuffled(static_cast<int>(alphabet.characters.size()), rng);

    EpisodePair ep;
    ep.task = Task::classification;
    std::vector<const vc::ImageSample*> recall_by_study;
    for (int i = 0; i < kEpisodeSize; ++i) {
        const Character& ch = alphabet.characters[chars[i]];
        if (ch.exemplars.size() < 2) throw IngestionError("character " + ch.name + " has fewer than 2 exemplars");
        const auto order = iota_shuffled(static_cast<int>(ch.exemplars.size()), rng);
        const vc::ImageSample* study = &ch.exemplars[order[0]];
        const vc::ImageSample* recall = nullptr;
        for (std::size_t j = 1; j < order.size() && !recall; ++j)
            if (ch.exemplars[order[j]].drawer != study->drawer) recall = &ch.exemplars[order[j]];
        if (!recall) throw IngestionError("character " + ch.name + " has a single drawer");
        ep.study.push_back(study);
        recall_by_study.push_back(recall);
    }
    ep.correspondence = iota_shuffled(kEpisodeSize, rng);
    for (int r = 0; r < kEpisodeSize; ++r) ep.recall.push_back(recall_by_study[ep.correspondence[r]]);
    return ep;
}

EpisodePair sample_run_instance(const OmniglotStore& store, int run_index, std::uint64_t seed) {
    if (run_index < 0) throw InvalidArgument("sample_run_instance: negative run index");
    std::vector<const Character*> eligible;
    for (const auto& a : store.evaluation)
        for (const auto& c : a.characters)
            if (static_cast<int>(c.exemplars.size()) >= kEpisodeSize) eligible.push_back(&c);
    if (eligible.empty()) throw InvalidArgument("sample_run_instance: no evaluation character has 20 exemplars");

    Engine rng(derive_seed(seed, {kInstanceStream, static_cast<std::uint64_t>(run_index)}));
    const Character& ch = *eligible[uniform_index(rng, eligible.size())];
    const auto order = iota_shuffled(static_cast<int>(ch.exemplars.size()), rng);

    EpisodePair ep;
    ep.task = Task::instance;
    for (int i = 0; i < kEpisodeSize; ++i) {
        ep.study.push_back(&ch.exemplars[order[i]]);
        ep.recall.push_back(&ch.exemplars[order[i]]);
        ep.correspondence.push_back(i);
    }
    return ep;
}

EpisodePair sample_run(Task task, const OmniglotStore& store, int run_index, std::uint64_t seed) {
    return task == Task::classification ? sample_run_classification(store, run_index, seed)
                                        : sample_run_instance(store, run_index, seed);
}

}  // namespace aha::bench
