#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aha/bench/omniglot.hpp"

namespace aha::bench {

enum class Task { classification, instance };

std::string to_string(Task task);
// Throws InvalidArgument for an unknown name.
Task parse_task(const std::string& name);

/// 20 study and 20 recall images. correspondence[r] is the study index that
/// recall image r should be matched to. Images point into the store.
struct EpisodePair {
    Task task = Task::classification;
    std::vector<const vc::ImageSample*> study;
    std::vector<const vc::ImageSample*> recall;
    std::vector<int> correspondence;
};

inline constexpr int kEpisodeSize = 20;

/// 20-way within-alphabet one-shot run over the evaluation split: one
/// alphabet with at least 20 characters, 20 of its characters, and for each
/// one study and one recall exemplar by different drawers. Recall order is
/// shuffled.
EpisodePair sample_run_classification(const OmniglotStore& store, int run_index, std::uint64_t seed);

/// One evaluation character; its 20 exemplars in random order serve as both
/// study and recall set, with identity correspondence.
EpisodePair sample_run_instance(const OmniglotStore& store, int run_index, std::uint64_t seed);

EpisodePair sample_run(Task task, const OmniglotStore& store, int run_index, std::uint64_t seed);

}  // namespace aha::bench
