#pragma once

// Similarity-threshold detector: an audio whose score is strictly below T
// is flagged as an AE. For multi-auxiliary systems the minimum score is
// compared (an AE that fooled only the target disagrees with at least one
// auxiliary, dragging the minimum down).

#include <algorithm>
#include <vector>

#include "asrdet/errors.hpp"
#include "asrdet/features.hpp"

namespace asrdet {

enum class ThresholdAggregation { Single, MinOverScores };

struct ThresholdModel {
    double t = 0.5;
    ThresholdAggregation aggregation = ThresholdAggregation::MinOverScores;

    // score - T; negative means AE ("lower than T" is strict).
    double decision(const std::vector<double>& x) const {
        if (x.empty()) throw DimensionMismatch(1, 0);
        if (aggregation == ThresholdAggregation::Single && x.size() != 1)
            throw DimensionMismatch(1, x.size());
        const double s = aggregation == ThresholdAggregation::Single
                             ? x.front()
                             : *std::min_element(x.begin(), x.end());
        return s - t;
    }
};

// Largest T, drawn from the observed scores plus {0, 1}, such that the
// fraction of benign scores strictly below T stays within max_fpr.
inline ThresholdModel select_threshold(const std::vector<double>& benign_scores, double max_fpr,
                                       ThresholdAggregation aggregation =
                                           ThresholdAggregation::MinOverScores) {
    if (benign_scores.empty()) throw DegenerateTraining("no benign scores for threshold selection");
    if (max_fpr <= 0.0 || max_fpr >= 1.0) throw InvalidSpec("max_fpr must lie in (0, 1)");

    std::vector<double> candidates = benign_scores;
    candidates.push_back(0.0);
    candidates.push_back(1.0);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const double n = static_cast<double>(benign_scores.size());
    double best = 0.0;
    for (double t : candidates) {
        std::size_t below = 0;
        for (double s : benign_scores)
            if (s < t) ++below;
        if (static_cast<double>(below) / n <= max_fpr) best = std::max(best, t);
    }
    ThresholdModel model;
    model.t = best;
    model.aggregation = aggregation;
    return model;
}

}  // namespace asrdet
