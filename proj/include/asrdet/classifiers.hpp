#pragma once

// Umbrella over the four model kinds with a common predict() surface.

#include <string>
#include <variant>

#include "asrdet/features.hpp"
#include "asrdet/forest.hpp"
#include "asrdet/knn.hpp"
#include "asrdet/svm.hpp"
#include "asrdet/threshold.hpp"

namespace asrdet {

struct DetectionResult {
    std::string audio_id;
    Label verdict = Label::Benign;
    double decision_value = 0.0;  // signed margin, vote fraction offset, or score - T
};

using ClassifierModel = std::variant<SvmModel, KnnModel, ForestModel, ThresholdModel>;

// Trained model plus the system it was trained under. Prediction on a
// vector built under a different auxiliary ordering or method is refused
// at load/validation time (see model_io).
struct Model {
    SystemConfig config;
    ClassifierModel classifier;
};

inline DetectionResult predict(const ClassifierModel& model, const FeatureVector& fv) {
    DetectionResult result;
    result.audio_id = fv.audio_id;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            const double d = m.decision(fv.scores);
            result.decision_value = d;
            if constexpr (std::is_same_v<T, SvmModel>) {
                result.verdict = d > 0.0 ? Label::Ae : Label::Benign;
            } else if constexpr (std::is_same_v<T, ThresholdModel>) {
                result.verdict = d < 0.0 ? Label::Ae : Label::Benign;
            } else {
                // Vote-based models: ties resolve to AE.
                result.verdict = d >= 0.0 ? Label::Ae : Label::Benign;
            }
        },
        model);
    return result;
}

inline DetectionResult predict(const Model& model, const FeatureVector& fv) {
    return predict(model.classifier, fv);
}

inline std::string classifier_kind(const ClassifierModel& model) {
    return std::visit(
        [](const auto& m) -> std::string {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SvmModel>) return "svm";
            else if constexpr (std::is_same_v<T, KnnModel>) return "knn";
            else if constexpr (std::is_same_v<T, ForestModel>) return "forest";
            else return "threshold";
        },
        model);
}

}  // namespace asrdet
