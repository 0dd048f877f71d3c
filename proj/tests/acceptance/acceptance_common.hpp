#pragma once

#include <filesystem>
#include <string>

#include "aha/nn/conv.hpp"

namespace acceptance {

// Prints one line per criterion: PASS, FAIL or SKIP, the criterion, details.
class Report {
public:
    explicit Report(std::string suite);
    void record(bool pass, const std::string& criterion, const std::string& detail);
    void skip(const std::string& criterion, const std::string& reason);
    // Prints the tally; 0 when nothing failed, 1 otherwise.
    int finish() const;

private:
    std::string suite_;
    int passed_ = 0;
    int failed_ = 0;
    int skipped_ = 0;
};

std::string fixed(double v, int digits = 4);
std::string scientific(double v);

/// Filters pretrained on the synthetic background split with a shortened
/// schedule; written once to a cache file whose path is returned.
const std::filesystem::path& synthetic_filters_path();

}  // namespace acceptance
