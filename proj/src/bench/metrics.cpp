#include "aha/bench/metrics.hpp"

#include <limits>

#include "aha/errors.hpp"

namespace aha::bench {

namespace {

void check_correspondence(const std::vector<int>& correspondence, Eigen::Index recall, Eigen::Index study) {
    if (static_cast<Eigen::Index>(correspondence.size()) != recall)
        throw InvalidArgument("correspondence length differs from recall count");
    for (int c : correspondence)
        if (c < 0 || c >= study) throw InvalidArgument("correspondence index out of range");
}

}  // namespace

std::vector<int> nearest_study(const nn::Matrix& study, const nn::Matrix& recall) {
    if (study.rows() != recall.rows()) throw InvalidArgument("nearest_study: dimension mismatch");
    if (study.cols() == 0) throw InvalidArgument("nearest_study: empty study set");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(recall.cols()));
    for (Eigen::Index r = 0; r < recall.cols(); ++r) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (Eigen::Index s = 0; s < study.cols(); ++s) {
            const double d = (study.col(s) - recall.col(r)).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(s);
            }
        }
        out.push_back(best);
    }
    return out;
}

double match_accuracy(const nn::Matrix& study, const nn::Matrix& recall, const std::vector<int>& correspondence) {
    check_correspondence(correspondence, recall.cols(), study.cols());
    if (recall.cols() == 0) throw InvalidArgument("match_accuracy: empty recall set");
    const auto pred = nearest_study(study, recall);
    int hits = 0;
    for (std::size_t r = 0; r < pred.size(); ++r) hits += pred[r] == correspondence[r] ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double recall_loss(const nn::Matrix& study_images, const nn::Matrix& recalled, const std::vector<int>& correspondence) {
    if (study_images.rows() != recalled.rows()) throw InvalidArgument("recall_loss: dimension mismatch");
    check_correspondence(correspondence, recalled.cols(), study_images.cols());
    if (recalled.cols() == 0) throw InvalidArgument("recall_loss: empty recall set");
    double total = 0.0;
    for (Eigen::Index r = 0; r < recalled.cols(); ++r)
        total += (recalled.col(r) - study_images.col(correspondence[r])).squaredNorm() /
                 static_cast<double>(recalled.rows());
    return total / static_cast<double>(recalled.cols());
}

}  // namespace aha::bench
