#pragma once

// Feature extraction: one similarity score per auxiliary ASR, comparing the
// target ASR's transcript against each auxiliary's for the same audio.

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "asrdet/errors.hpp"
#include "asrdet/similarity.hpp"
#include "asrdet/transcript.hpp"

namespace asrdet {

enum class Label { Benign, Ae };

inline std::string to_string(Label l) { return l == Label::Benign ? "benign" : "ae"; }

inline Label parse_label(std::string_view s) {
    if (s == "benign") return Label::Benign;
    if (s == "ae") return Label::Ae;
    throw ParseError("unknown label: " + std::string(s));
}

// Detection system layout: one target ASR, n >= 1 auxiliaries in a fixed
// order, and the similarity method. Score order is pinned by the declared
// auxiliary order and travels with every serialized model.
struct SystemConfig {
    std::string target_asr;
    std::vector<std::string> auxiliary_asrs;
    SimilarityMethod method;

    void validate() const {
        if (auxiliary_asrs.empty()) throw InvalidSpec("no auxiliary ASRs configured");
        for (std::size_t i = 0; i < auxiliary_asrs.size(); ++i) {
            if (auxiliary_asrs[i] == target_asr)
                throw InvalidSpec("target ASR listed as auxiliary: " + target_asr);
            for (std::size_t j = i + 1; j < auxiliary_asrs.size(); ++j)
                if (auxiliary_asrs[i] == auxiliary_asrs[j])
                    throw InvalidSpec("duplicate auxiliary ASR: " + auxiliary_asrs[i]);
        }
    }

    bool operator==(const SystemConfig&) const = default;
};

struct FeatureVector {
    std::string audio_id;
    std::vector<double> scores;  // one per auxiliary, config order
    std::optional<Label> label;
};

struct ManifestEntry {
    std::string audio_id;
    Label label;
};

inline FeatureVector build_feature_vector(const SystemConfig& config, const TranscriptStore& store,
                                          const std::string& audio_id,
                                          std::optional<Label> label = std::nullopt) {
    const Transcript& target = store.at(audio_id, config.target_asr);
    FeatureVector fv;
    fv.audio_id = audio_id;
    fv.label = label;
    fv.scores.reserve(config.auxiliary_asrs.size());
    for (const auto& aux : config.auxiliary_asrs) {
        const Transcript& t = store.at(audio_id, aux);
        fv.scores.push_back(score(config.method, target.text, t.text));
    }
    return fv;
}

inline std::vector<FeatureVector> build_dataset(const SystemConfig& config,
                                                const TranscriptStore& store,
                                                const std::vector<ManifestEntry>& manifest) {
    std::vector<FeatureVector> out;
    out.reserve(manifest.size());
    for (const auto& entry : manifest)
        out.push_back(build_feature_vector(config, store, entry.audio_id, entry.label));
    return out;
}

// CSV format: audio_id,<aux asr ids...>[,label]; full double precision.
inline void write_features_csv(std::ostream& os, const SystemConfig& config,
                               const std::vector<FeatureVector>& fvs) {
    os << "audio_id";
    for (const auto& aux : config.auxiliary_asrs) os << ',' << aux;
    const bool labeled = !fvs.empty() && fvs.front().label.has_value();
    if (labeled) os << ",label";
    os << '\n';
    os.precision(17);
    for (const auto& fv : fvs) {
        os << fv.audio_id;
        for (double s : fv.scores) os << ',' << s;
        if (labeled) {
            if (!fv.label) throw InvalidSpec("mixed labeled/unlabeled feature vectors");
            os << ',' << to_string(*fv.label);
        }
        os << '\n';
    }
}

namespace detail {

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') fields.push_back(std::move(cur)), cur.clear();
        else if (c != '\r') cur.push_back(c);
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace detail

struct FeatureCsv {
    std::vector<std::string> auxiliary_asrs;  // from the header row
    std::vector<FeatureVector> vectors;
};

inline FeatureCsv read_features_csv(std::istream& is) {
    FeatureCsv out;
    std::string line;
    if (!std::getline(is, line)) throw ParseError("feature CSV: empty file");
    auto header = detail::csv_split(line);
    if (header.size() < 2 || header.front() != "audio_id")
        throw ParseError("feature CSV: bad header");
    const bool labeled = header.back() == "label";
    const std::size_t n = header.size() - 1 - (labeled ? 1 : 0);
    if (n == 0) throw ParseError("feature CSV: no score columns");
    out.auxiliary_asrs.assign(header.begin() + 1, header.begin() + 1 + n);

    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = detail::csv_split(line);
        if (fields.size() != header.size())
            throw ParseError("feature CSV line " + std::to_string(lineno) + ": field count");
        FeatureVector fv;
        fv.audio_id = fields[0];
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fv.scores.push_back(std::stod(fields[1 + i]));
            } catch (const std::exception&) {
                throw ParseError("feature CSV line " + std::to_string(lineno) + ": bad score");
            }
        }
        if (labeled) fv.label = parse_label(fields.back());
        out.vectors.push_back(std::move(fv));
    }
    return out;
}

// Manifest CSV: audio_id,label with label in {benign, ae}. A header row is
// accepted and skipped.
inline std::vector<ManifestEntry> read_manifest_csv(std::istream& is) {
    std::vector<ManifestEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = detail::csv_split(line);
        if (fields.size() != 2)
            throw ParseError("manifest line " + std::to_string(lineno) + ": expected audio_id,label");
        if (lineno == 1 && fields[0] == "audio_id") continue;
        out.push_back({fields[0], parse_label(fields[1])});
    }
    return out;
}

inline void write_manifest_csv(std::ostream& os, const std::vector<ManifestEntry>& manifest) {
    os << "audio_id,label\n";
    for (const auto& e : manifest) os << e.audio_id << ',' << to_string(e.label) << '\n';
}

}  // namespace asrdet
