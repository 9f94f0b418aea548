#pragma once

// Overhead decomposition per audio: recognition (parallel backend fan-out,
// so bounded by the slowest backend), similarity calculation, and
// classification.

#include <chrono>
#include <string>
#include <vector>

#include "asrdet/classifiers.hpp"
#include "asrdet/features.hpp"
#include "asrdet/ingest.hpp"

namespace asrdet {

struct TimingReport {
    double recognition_s = 0.0;
    double similarity_s = 0.0;
    double classification_s = 0.0;
};

inline TimingReport timing_report(const std::vector<const AsrBackend*>& backends,
                                  const SystemConfig& config, const ClassifierModel& model,
                                  const std::vector<std::string>& sample_audio_ids) {
    if (sample_audio_ids.empty()) throw InvalidSpec("timing needs at least one sample audio");
    using clock = std::chrono::steady_clock;
    const auto seconds = [](clock::duration d) {
        return std::chrono::duration<double>(d).count();
    };

    TimingReport report;
    for (const auto& audio_id : sample_audio_ids) {
        const auto t0 = clock::now();
        FanoutResult fan = transcribe_all(backends, audio_id);
        const auto t1 = clock::now();
        if (!fan.ok()) throw NotFound("timing sample " + audio_id + ": " + fan.failure_summary());

        TranscriptStore store;
        for (auto& [id, t] : fan.transcripts) store.add(std::move(t));
        FeatureVector fv = build_feature_vector(config, store, audio_id);
        const auto t2 = clock::now();
        predict(model, fv);
        const auto t3 = clock::now();

        report.recognition_s += seconds(t1 - t0);
        report.similarity_s += seconds(t2 - t1);
        report.classification_s += seconds(t3 - t2);
    }
    const double n = static_cast<double>(sample_audio_ids.size());
    report.recognition_s /= n;
    report.similarity_s /= n;
    report.classification_s /= n;
    return report;
}

}  // namespace asrdet
