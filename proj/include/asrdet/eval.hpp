#pragma once

// Evaluation harness: stratified k-fold cross validation, confusion-matrix
// metrics, defense rates, ROC/AUC and score histograms. AE is the positive
// class throughout, so TPR equals the defense rate on AE-only sets.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "asrdet/classifiers.hpp"
#include "asrdet/errors.hpp"
#include "asrdet/features.hpp"

namespace asrdet {

struct EvalReport {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    double accuracy() const { return total() ? static_cast<double>(tp + tn) / total() : 0.0; }
    double fpr() const { return (fp + tn) ? static_cast<double>(fp) / (fp + tn) : 0.0; }
    double fnr() const { return (fn + tp) ? static_cast<double>(fn) / (fn + tp) : 0.0; }
};

// Seeded shuffle, then stratified dealing: the benign and AE strata are
// dealt round-robin with a shared fold cursor, so fold sizes differ by at
// most one while each fold keeps roughly the global class ratio.
inline std::vector<std::vector<FeatureVector>> kfold_split(const std::vector<FeatureVector>& dataset,
                                                           std::size_t k, std::uint64_t seed) {
    if (k < 2) throw InvalidSplit("k must be at least 2");
    if (dataset.size() < k) throw InvalidSplit("k exceeds dataset size");

    std::vector<std::size_t> benign_idx, ae_idx;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (!dataset[i].label) throw LabelError("unlabeled vector: " + dataset[i].audio_id);
        (*dataset[i].label == Label::Benign ? benign_idx : ae_idx).push_back(i);
    }
    std::mt19937_64 rng(seed);
    std::shuffle(benign_idx.begin(), benign_idx.end(), rng);
    std::shuffle(ae_idx.begin(), ae_idx.end(), rng);

    std::vector<std::vector<FeatureVector>> folds(k);
    std::size_t cursor = 0;
    for (const auto* stratum : {&benign_idx, &ae_idx})
        for (std::size_t i : *stratum) folds[cursor++ % k].push_back(dataset[i]);
    return folds;
}

inline EvalReport evaluate(const ClassifierModel& model, const std::vector<FeatureVector>& test_set) {
    if (test_set.empty()) throw InvalidSplit("empty test set");
    EvalReport report;
    for (const auto& fv : test_set) {
        if (!fv.label) throw LabelError("unlabeled vector: " + fv.audio_id);
        const Label verdict = predict(model, fv).verdict;
        if (*fv.label == Label::Ae) (verdict == Label::Ae ? report.tp : report.fn)++;
        else (verdict == Label::Ae ? report.fp : report.tn)++;
    }
    return report;
}

struct CvReport {
    std::vector<EvalReport> folds;
    EvalReport pooled;  // counts summed over folds

    // Population standard deviation across folds, as reported.
    static std::pair<double, double> mean_std(const std::vector<double>& xs) {
        const double n = static_cast<double>(xs.size());
        const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        return {mean, std::sqrt(var / n)};
    }

    std::pair<double, double> accuracy() const { return metric(&EvalReport::accuracy); }
    std::pair<double, double> fpr() const { return metric(&EvalReport::fpr); }
    std::pair<double, double> fnr() const { return metric(&EvalReport::fnr); }

private:
    std::pair<double, double> metric(double (EvalReport::*fn)() const) const {
        std::vector<double> xs;
        xs.reserve(folds.size());
        for (const auto& f : folds) xs.push_back((f.*fn)());
        return mean_std(xs);
    }
};

using Trainer = std::function<ClassifierModel(const std::vector<FeatureVector>&)>;

inline CvReport cross_validate(const Trainer& trainer, const std::vector<FeatureVector>& dataset,
                               std::size_t k, std::uint64_t seed) {
    const auto folds = kfold_split(dataset, k, seed);
    CvReport report;
    for (std::size_t held_out = 0; held_out < k; ++held_out) {
        std::vector<FeatureVector> train;
        for (std::size_t f = 0; f < k; ++f)
            if (f != held_out) train.insert(train.end(), folds[f].begin(), folds[f].end());
        ClassifierModel model;
        try {
            model = trainer(train);
        } catch (const DegenerateTraining& e) {
            throw DegenerateTraining(std::string(e.what()) + " (fold " + std::to_string(held_out) +
                                     ")");
        }
        const EvalReport fold_report = evaluate(model, folds[held_out]);
        report.pooled.tp += fold_report.tp;
        report.pooled.fp += fold_report.fp;
        report.pooled.tn += fold_report.tn;
        report.pooled.fn += fold_report.fn;
        report.folds.push_back(fold_report);
    }
    return report;
}

// Fraction of AEs detected. The input must be AE-only.
inline double defense_rate(const ClassifierModel& model, const std::vector<FeatureVector>& ae_set) {
    if (ae_set.empty()) throw InvalidSplit("empty AE set");
    std::size_t detected = 0;
    for (const auto& fv : ae_set) {
        if (!fv.label || *fv.label != Label::Ae)
            throw LabelError("defense_rate expects AE-labeled vectors only: " + fv.audio_id);
        if (predict(model, fv).verdict == Label::Ae) ++detected;
    }
    return static_cast<double>(detected) / static_cast<double>(ae_set.size());
}

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (fpr, tpr), threshold ascending
    double auc = 0.0;
};

// Threshold sweep for the rule "score < T means AE": TPR(T) is the AE
// fraction below T, FPR(T) the benign fraction below T. Trapezoidal AUC,
// which equals the normalized Mann-Whitney U statistic.
inline RocCurve roc(const std::vector<double>& benign_scores, const std::vector<double>& ae_scores) {
    if (benign_scores.empty() || ae_scores.empty())
        throw InvalidSplit("roc needs both benign and AE scores");

    std::vector<double> thresholds;
    thresholds.reserve(benign_scores.size() + ae_scores.size() + 1);
    thresholds.insert(thresholds.end(), benign_scores.begin(), benign_scores.end());
    thresholds.insert(thresholds.end(), ae_scores.begin(), ae_scores.end());
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    thresholds.push_back(thresholds.back() + 1.0);  // everything flagged

    RocCurve curve;
    const double nb = static_cast<double>(benign_scores.size());
    const double na = static_cast<double>(ae_scores.size());
    for (double t : thresholds) {
        std::size_t fb = 0, fa = 0;
        for (double s : benign_scores)
            if (s < t) ++fb;
        for (double s : ae_scores)
            if (s < t) ++fa;
        curve.points.emplace_back(static_cast<double>(fb) / nb, static_cast<double>(fa) / na);
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& [fpr0, tpr0] = curve.points[i - 1];
        const auto& [fpr1, tpr1] = curve.points[i];
        curve.auc += (fpr1 - fpr0) * (tpr0 + tpr1) * 0.5;
    }
    return curve;
}

struct Histogram {
    std::size_t bins = 0;
    std::vector<std::size_t> benign_counts;
    std::vector<std::size_t> ae_counts;

    // Fraction of all scores falling in bins occupied by both labels.
    double overlap_fraction() const {
        std::size_t overlap = 0, total = 0;
        for (std::size_t i = 0; i < bins; ++i) {
            total += benign_counts[i] + ae_counts[i];
            if (benign_counts[i] > 0 && ae_counts[i] > 0)
                overlap += benign_counts[i] + ae_counts[i];
        }
        return total ? static_cast<double>(overlap) / static_cast<double>(total) : 0.0;
    }
};

// Uniform bins on [0,1]; the last bin is right-closed so 1.0 lands in it.
inline Histogram score_histogram(const std::vector<FeatureVector>& fvs, std::size_t bins) {
    if (bins < 2) throw InvalidSpec("histogram needs at least 2 bins");
    Histogram h;
    h.bins = bins;
    h.benign_counts.assign(bins, 0);
    h.ae_counts.assign(bins, 0);
    for (const auto& fv : fvs) {
        if (!fv.label) throw LabelError("unlabeled vector: " + fv.audio_id);
        auto& counts = *fv.label == Label::Benign ? h.benign_counts : h.ae_counts;
        for (double s : fv.scores) {
            auto bin = static_cast<std::size_t>(s * static_cast<double>(bins));
            if (bin >= bins) bin = bins - 1;
            ++counts[bin];
        }
    }
    return h;
}

}  // namespace asrdet
