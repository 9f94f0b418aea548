#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "asrdet/classifiers.hpp"

using namespace asrdet;

namespace {

FeatureVector fv1(double s, Label l, const std::string& id = "x") {
    return {id, {s}, l};
}

// 1-D separable set: AEs near 0.2, benign near 0.9, small quantized noise
// so train and test runs share the same value grid.
std::vector<FeatureVector> separable_1d(std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::vector<FeatureVector> data;
    const auto noise = [&] { return 0.01 * (static_cast<int>(rng() % 7) - 3); };
    for (int i = 0; i < 50; ++i) {
        data.push_back(fv1(0.2 + noise(), Label::Ae, "ae" + std::to_string(i)));
        data.push_back(fv1(0.9 + noise(), Label::Benign, "be" + std::to_string(i)));
    }
    return data;
}

double training_accuracy(const ClassifierModel& model, const std::vector<FeatureVector>& data) {
    std::size_t correct = 0;
    for (const auto& fv : data)
        if (predict(model, fv).verdict == *fv.label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

}  // namespace

TEST_CASE("svm separates 1-D clusters") {
    auto data = separable_1d();
    // Oracle: a separating threshold exists (max AE score < min benign score).
    double max_ae = 0.0, min_be = 1.0;
    for (const auto& fv : data)
        (*fv.label == Label::Ae ? max_ae : min_be) =
            *fv.label == Label::Ae ? std::max(max_ae, fv.scores[0]) : std::min(min_be, fv.scores[0]);
    REQUIRE(max_ae < min_be);

    SvmModel model = train_svm(data);
    CHECK(training_accuracy(model, data) == 1.0);
}

TEST_CASE("svm rejects single-class data") {
    std::vector<FeatureVector> data{fv1(0.5, Label::Ae), fv1(0.6, Label::Ae)};
    CHECK_THROWS_AS(train_svm(data), DegenerateTraining);
    CHECK_THROWS_AS(train_svm({}), DegenerateTraining);
}

TEST_CASE("svm poly-3 kernel separates an xor layout") {
    std::vector<FeatureVector> data;
    for (int rep = 0; rep < 10; ++rep) {
        const double d = 0.005 * rep;
        data.push_back({"b1", {0.9 - d, 0.1 + d}, Label::Benign});
        data.push_back({"b2", {0.1 + d, 0.9 - d}, Label::Benign});
        data.push_back({"a1", {0.1 + d, 0.1 + d}, Label::Ae});
        data.push_back({"a2", {0.9 - d, 0.9 - d}, Label::Ae});
    }
    SvmModel model = train_svm(data);
    CHECK(training_accuracy(model, data) == 1.0);
}

TEST_CASE("svm kkt conditions hold after training") {
    auto data = separable_1d();
    SvmModel model = train_svm(data, 1.0, 1e-3);
    double alpha_y_sum = 0.0;
    for (std::size_t i = 0; i < model.coefficients.size(); ++i) {
        const double coef = model.coefficients[i];
        CHECK(std::abs(coef) <= model.c + 1e-9);  // 0 <= alpha <= C
        alpha_y_sum += coef;                      // coef = alpha * y
        // Support vectors strictly inside (0, C) sit on the margin: |f| = 1.
        if (std::abs(coef) > 1e-9 && std::abs(coef) < model.c - 1e-9) {
            const double margin = model.decision(model.support_vectors[i]);
            CHECK_THAT(std::abs(margin), Catch::Matchers::WithinAbs(1.0, 2e-3));
        }
    }
    CHECK_THAT(alpha_y_sum, Catch::Matchers::WithinAbs(0.0, 1e-6));
}

TEST_CASE("knn votes by neighborhood") {
    std::vector<FeatureVector> data;
    for (int i = 0; i < 10; ++i) {
        data.push_back({"a" + std::to_string(i), {0.1 + 0.005 * i, 0.1}, Label::Ae});
        data.push_back({"b" + std::to_string(i), {0.9 - 0.005 * i, 0.9}, Label::Benign});
    }
    KnnModel model = train_knn(data);
    CHECK(predict(ClassifierModel{model}, {"q", {0.12, 0.11}, {}}).verdict == Label::Ae);
    CHECK(predict(ClassifierModel{model}, {"q", {0.88, 0.9}, {}}).verdict == Label::Benign);
}

TEST_CASE("knn clamps k to the training size") {
    std::vector<FeatureVector> data;
    for (int i = 0; i < 4; ++i) data.push_back(fv1(0.9, Label::Benign, "b" + std::to_string(i)));
    for (int i = 0; i < 2; ++i) data.push_back(fv1(0.2, Label::Ae, "a" + std::to_string(i)));
    KnnModel model = train_knn(data);  // k = 10 > 6 points: all vote
    CHECK(predict(ClassifierModel{model}, fv1(0.5, Label::Benign)).verdict == Label::Benign);
}

TEST_CASE("knn k=1 returns the label of an exact-match training point") {
    auto data = separable_1d();
    KnnModel model = train_knn(data, 1);
    for (const auto& fv : data) CHECK(predict(ClassifierModel{model}, fv).verdict == *fv.label);
}

TEST_CASE("knn ties resolve to ae") {
    std::vector<FeatureVector> data{fv1(0.4, Label::Ae, "a"), fv1(0.6, Label::Benign, "b")};
    KnnModel model = train_knn(data, 2);
    CHECK(predict(ClassifierModel{model}, fv1(0.5, Label::Benign)).verdict == Label::Ae);
}

TEST_CASE("forest is deterministic under a fixed seed") {
    auto data = separable_1d();
    ForestModel f1 = train_forest(data, 25, 200);
    ForestModel f2 = train_forest(data, 25, 200);
    for (int i = 0; i <= 100; ++i) {
        const FeatureVector probe{"p", {i / 100.0}, {}};
        CHECK(f1.decision(probe.scores) == f2.decision(probe.scores));
    }
    CHECK(training_accuracy(ClassifierModel{f1}, data) == 1.0);
}

TEST_CASE("forest rejects empty data") {
    CHECK_THROWS_AS(train_forest({}), DegenerateTraining);
}

TEST_CASE("threshold verdicts use a strict lower-than rule") {
    ThresholdModel model{0.85, ThresholdAggregation::Single};
    CHECK(predict(ClassifierModel{model}, fv1(0.60, Label::Ae)).verdict == Label::Ae);
    CHECK(predict(ClassifierModel{model}, fv1(0.85, Label::Benign)).verdict == Label::Benign);
}

TEST_CASE("threshold min aggregation over multi-auxiliary vectors") {
    ThresholdModel model{0.85, ThresholdAggregation::MinOverScores};
    CHECK(predict(ClassifierModel{model}, {"q", {0.95, 0.4, 0.9}, {}}).verdict == Label::Ae);
    CHECK(predict(ClassifierModel{model}, {"q", {0.95, 0.9, 0.9}, {}}).verdict == Label::Benign);
}

TEST_CASE("dimension mismatch is reported") {
    auto data = separable_1d();
    SvmModel svm = train_svm(data);
    CHECK_THROWS_AS(predict(ClassifierModel{svm}, {"q", {0.5, 0.5}, {}}), DimensionMismatch);
    KnnModel knn = train_knn(data);
    CHECK_THROWS_AS(predict(ClassifierModel{knn}, {"q", {0.5, 0.5}, {}}), DimensionMismatch);
    ForestModel forest = train_forest(data, 5, 200);
    CHECK_THROWS_AS(predict(ClassifierModel{forest}, {"q", {0.5, 0.5}, {}}), DimensionMismatch);
    ThresholdModel threshold{0.5, ThresholdAggregation::Single};
    CHECK_THROWS_AS(predict(ClassifierModel{threshold}, {"q", {0.5, 0.5}, {}}), DimensionMismatch);
}

TEST_CASE("select_threshold picks the largest T within the FPR budget") {
    std::vector<double> scores(95, 1.0);
    scores.insert(scores.end(), 5, 0.5);
    ThresholdModel m = select_threshold(scores, 0.05);
    CHECK(m.t == 1.0);

    std::vector<double> all_ones(100, 1.0);
    CHECK(select_threshold(all_ones, 0.05).t == 1.0);

    std::vector<double> uniform;
    for (int i = 1; i <= 10; ++i) uniform.push_back(i / 10.0);
    CHECK(select_threshold(uniform, 0.05).t == 0.1);

    CHECK_THROWS_AS(select_threshold({}, 0.05), DegenerateTraining);
    CHECK_THROWS_AS(select_threshold(all_ones, 0.0), InvalidSpec);
}

TEST_CASE("all four model types solve the 1-D separable problem") {
    auto train_data = separable_1d(1);
    auto test_data = separable_1d(2);
    std::vector<double> benign_scores;
    for (const auto& fv : train_data)
        if (*fv.label == Label::Benign) benign_scores.push_back(fv.scores[0]);

    const ClassifierModel models[] = {
        ClassifierModel{train_svm(train_data)},
        ClassifierModel{train_knn(train_data)},
        ClassifierModel{train_forest(train_data, 25, 200)},
        ClassifierModel{select_threshold(benign_scores, 0.01, ThresholdAggregation::Single)}};
    for (const auto& model : models) CHECK(training_accuracy(model, test_data) == 1.0);
}
