#include <catch2/catch_amalgamated.hpp>

#include "asrdet/model_io.hpp"

using namespace asrdet;

namespace {

std::vector<FeatureVector> tiny_data() {
    std::vector<FeatureVector> data;
    for (int i = 0; i < 20; ++i) {
        data.push_back({"b" + std::to_string(i), {0.95, 0.9, 0.92}, Label::Benign});
        data.push_back({"a" + std::to_string(i), {0.3, 0.4, 0.35}, Label::Ae});
    }
    return data;
}

SystemConfig config3() {
    return {"ds0", {"ds1", "gcs", "at"}, {Metric::JaroWinkler, true}};
}

void check_same_predictions(const Model& original, const Model& restored) {
    for (double x : {0.1, 0.35, 0.6, 0.92}) {
        const FeatureVector probe{"p", {x, x, x}, {}};
        CHECK(predict(original, probe).verdict == predict(restored, probe).verdict);
        CHECK(predict(original, probe).decision_value == predict(restored, probe).decision_value);
    }
}

}  // namespace

TEST_CASE("every model kind round-trips through JSON") {
    const auto data = tiny_data();
    const ClassifierModel classifiers[] = {
        ClassifierModel{train_svm(data)},
        ClassifierModel{train_knn(data)},
        ClassifierModel{train_forest(data, 10, 200)},
        ClassifierModel{ThresholdModel{0.7, ThresholdAggregation::MinOverScores}}};
    for (const auto& c : classifiers) {
        Model model{config3(), c};
        Model restored = model_from_json(model_to_json(model));
        CHECK(restored.config == model.config);
        CHECK(classifier_kind(restored.classifier) == classifier_kind(model.classifier));
        check_same_predictions(model, restored);
    }
}

TEST_CASE("loading validates format, version and dimensions") {
    Model model{config3(), ClassifierModel{train_knn(tiny_data())}};
    nlohmann::json j = model_to_json(model);

    nlohmann::json wrong_format = j;
    wrong_format["format"] = "something-else";
    CHECK_THROWS_AS(model_from_json(wrong_format), ParseError);

    nlohmann::json wrong_version = j;
    wrong_version["version"] = 99;
    CHECK_THROWS_AS(model_from_json(wrong_version), ParseError);

    // Model trained with 3 features but only 2 auxiliaries declared.
    nlohmann::json wrong_dim = j;
    wrong_dim["system"]["auxiliary_asrs"] = {"ds1", "gcs"};
    CHECK_THROWS_AS(model_from_json(wrong_dim), ParseError);
}

TEST_CASE("feature compatibility check rejects reordered auxiliaries") {
    Model model{config3(), ClassifierModel{ThresholdModel{}}};
    CHECK_NOTHROW(validate_feature_compatibility(model, {"ds1", "gcs", "at"}));
    CHECK_THROWS_AS(validate_feature_compatibility(model, {"gcs", "ds1", "at"}), InvalidSpec);
}
