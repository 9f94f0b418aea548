#pragma once

// K-nearest-neighbors vote over stored training vectors, Euclidean distance,
// k = 10 by default. Ties vote AE (fail-safe for a detector).

#include <algorithm>
#include <cmath>
#include <vector>

#include "asrdet/errors.hpp"
#include "asrdet/features.hpp"

namespace asrdet {

struct KnnModel {
    std::size_t k = 10;
    std::size_t dim = 0;
    std::vector<std::vector<double>> points;
    std::vector<Label> labels;

    // AE vote fraction minus 0.5; >= 0 means AE. If fewer than k training
    // points exist, all of them vote.
    double decision(const std::vector<double>& x) const {
        if (x.size() != dim) throw DimensionMismatch(dim, x.size());
        const std::size_t effective_k = std::min(k, points.size());
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                const double diff = points[i][j] - x[j];
                d2 += diff * diff;
            }
            dist.emplace_back(d2, i);
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(effective_k),
                          dist.end());
        std::size_t ae_votes = 0;
        for (std::size_t i = 0; i < effective_k; ++i)
            if (labels[dist[i].second] == Label::Ae) ++ae_votes;
        return static_cast<double>(ae_votes) / static_cast<double>(effective_k) - 0.5;
    }
};

inline KnnModel train_knn(const std::vector<FeatureVector>& data, std::size_t k = 10) {
    if (data.empty()) throw DegenerateTraining("empty training set");
    if (k < 1) throw InvalidSpec("knn requires k >= 1");
    KnnModel model;
    model.k = k;
    model.dim = data.front().scores.size();
    for (const auto& fv : data) {
        if (!fv.label) throw LabelError("unlabeled vector in training set: " + fv.audio_id);
        if (fv.scores.size() != model.dim) throw DimensionMismatch(model.dim, fv.scores.size());
        model.points.push_back(fv.scores);
        model.labels.push_back(*fv.label);
    }
    return model;
}

}  // namespace asrdet
