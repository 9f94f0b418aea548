#pragma once

// Synthesis of hypothetical multiple-ASR-effective (MAE) AE feature vectors
// from score pools, and of synthetic transcript corpora for desk-scale
// evaluation. Everything is a pure function of (inputs, seed).

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "asrdet/errors.hpp"
#include "asrdet/features.hpp"
#include "asrdet/transcript.hpp"

namespace asrdet {

// lambda_be: scores harvested from benign samples; lambda_ak: from AEs.
struct ScorePools {
    std::vector<double> lambda_be;
    std::vector<double> lambda_ak;
};

inline ScorePools build_pools(const std::vector<FeatureVector>& benign_fvs,
                              const std::vector<FeatureVector>& ae_fvs) {
    if (benign_fvs.empty()) throw EmptyPool("lambda_be");
    if (ae_fvs.empty()) throw EmptyPool("lambda_ak");
    ScorePools pools;
    for (const auto& fv : benign_fvs)
        pools.lambda_be.insert(pools.lambda_be.end(), fv.scores.begin(), fv.scores.end());
    for (const auto& fv : ae_fvs)
        pools.lambda_ak.insert(pools.lambda_ak.end(), fv.scores.begin(), fv.scores.end());
    return pools;
}

// A hypothetical AE that fools the target plus a strict subset of the
// auxiliaries. Fooling every ASR is outside the model.
struct MaeType {
    std::string name;  // "type-1".."type-6" for the canonical layouts
    std::set<std::string> fooled;  // asr ids, target included

    void validate(const SystemConfig& config) const {
        if (!fooled.count(config.target_asr))
            throw InvalidSpec("MAE type must include the target ASR " + config.target_asr);
        for (const auto& id : fooled) {
            if (id == config.target_asr) continue;
            if (std::find(config.auxiliary_asrs.begin(), config.auxiliary_asrs.end(), id) ==
                config.auxiliary_asrs.end())
                throw UnknownAsr(id);
        }
        if (fooled.size() > config.auxiliary_asrs.size())
            throw InvalidSpec("MAE type cannot fool every ASR");
    }
};

// The six canonical types for a 3-auxiliary system: types 1-3 fool the
// target plus one auxiliary, types 4-6 the target plus two.
inline std::vector<MaeType> canonical_mae_types(const SystemConfig& config) {
    if (config.auxiliary_asrs.size() != 3)
        throw InvalidSpec("canonical MAE types require exactly 3 auxiliaries");
    const auto& aux = config.auxiliary_asrs;
    std::vector<MaeType> types;
    types.push_back({"type-1", {config.target_asr, aux[0]}});
    types.push_back({"type-2", {config.target_asr, aux[1]}});
    types.push_back({"type-3", {config.target_asr, aux[2]}});
    types.push_back({"type-4", {config.target_asr, aux[0], aux[1]}});
    types.push_back({"type-5", {config.target_asr, aux[0], aux[2]}});
    types.push_back({"type-6", {config.target_asr, aux[1], aux[2]}});
    return types;
}

// Each synthesized vector draws scores[i] from lambda_be when auxiliary i is
// fooled, from lambda_ak otherwise (with replacement, seeded).
inline std::vector<FeatureVector> synth_mae(const ScorePools& pools, const SystemConfig& config,
                                            const MaeType& mae, std::size_t count,
                                            std::uint64_t seed) {
    if (pools.lambda_be.empty()) throw EmptyPool("lambda_be");
    if (pools.lambda_ak.empty()) throw EmptyPool("lambda_ak");
    config.validate();
    mae.validate(config);

    std::mt19937_64 rng(seed);
    std::vector<FeatureVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        FeatureVector fv;
        fv.audio_id = "mae-" + mae.name + "-" + std::to_string(i);
        fv.label = Label::Ae;
        for (const auto& aux : config.auxiliary_asrs) {
            const auto& pool = mae.fooled.count(aux) ? pools.lambda_be : pools.lambda_ak;
            fv.scores.push_back(pool[rng() % pool.size()]);
        }
        out.push_back(std::move(fv));
    }
    return out;
}

// Comprehensive training set: types 4-6 (target plus two auxiliaries), equal
// counts per type.
inline std::vector<FeatureVector> synth_comprehensive(const ScorePools& pools,
                                                      const SystemConfig& config,
                                                      std::size_t count_per_type,
                                                      std::uint64_t seed) {
    const auto types = canonical_mae_types(config);
    std::vector<FeatureVector> out;
    out.reserve(3 * count_per_type);
    for (std::size_t t = 3; t < 6; ++t) {
        auto batch = synth_mae(pools, config, types[t], count_per_type, seed + t);
        out.insert(out.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
    }
    return out;
}

struct CorpusSpec {
    std::size_t n_benign = 0;
    std::size_t n_ae = 0;
    double wer = 0.0;  // per-word substitution rate for auxiliary transcripts
    std::uint64_t seed = 0;
};

struct SynthCorpus {
    TranscriptStore store;
    std::vector<ManifestEntry> manifest;
};

namespace detail {

// Replacement vocabulary for WER perturbation.
inline const std::vector<std::string>& substitution_vocab() {
    static const std::vector<std::string> vocab = {
        "about", "after",  "again", "around", "because", "before", "bright", "called",
        "coming", "could", "every", "family", "ground",  "happen", "house",  "inside",
        "light",  "little", "money", "morning", "mother", "never", "night",  "nothing",
        "number", "other",  "people", "place", "really",  "right", "school", "should",
        "something", "sound", "still", "story", "summer", "their", "thing",  "think",
        "through", "together", "under", "until", "water",  "where", "window", "world"};
    return vocab;
}

inline std::string perturb_words(const std::string& text, double wer, std::mt19937_64& rng) {
    TokenSeq tokens = normalize(text);
    const auto& vocab = substitution_vocab();
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto& token : tokens) {
        if (coin(rng) >= wer) continue;
        // Never substitute a word with itself.
        std::string replacement;
        do {
            replacement = vocab[rng() % vocab.size()];
        } while (replacement == token);
        token = replacement;
    }
    return join_tokens(tokens);
}

}  // namespace detail

// Benign audio: the target transcribes the host text, each auxiliary the
// host text perturbed at rate wer. AE audio: the target transcribes an
// embedded command, auxiliaries still hear the host.
inline SynthCorpus synth_corpus(const CorpusSpec& spec, const SystemConfig& config,
                                const std::vector<std::string>& host_texts,
                                const std::vector<std::string>& commands) {
    if (spec.wer < 0.0 || spec.wer >= 1.0) throw InvalidSpec("wer must lie in [0, 1)");
    if (host_texts.empty()) throw InvalidSpec("no host texts");
    if (spec.n_ae > 0 && commands.empty()) throw InvalidSpec("no commands for AE synthesis");
    config.validate();

    std::mt19937_64 rng(spec.seed);
    SynthCorpus out;
    for (std::size_t i = 0; i < spec.n_benign; ++i) {
        const std::string audio_id = "benign-" + std::to_string(i);
        const std::string& host = host_texts[i % host_texts.size()];
        out.store.add({audio_id, config.target_asr, host});
        for (const auto& aux : config.auxiliary_asrs)
            out.store.add({audio_id, aux, detail::perturb_words(host, spec.wer, rng)});
        out.manifest.push_back({audio_id, Label::Benign});
    }
    for (std::size_t i = 0; i < spec.n_ae; ++i) {
        const std::string audio_id = "ae-" + std::to_string(i);
        const std::string& host = host_texts[i % host_texts.size()];
        const std::string& command = commands[i % commands.size()];
        out.store.add({audio_id, config.target_asr, command});
        for (const auto& aux : config.auxiliary_asrs)
            out.store.add({audio_id, aux, detail::perturb_words(host, spec.wer, rng)});
        out.manifest.push_back({audio_id, Label::Ae});
    }
    return out;
}

}  // namespace asrdet
