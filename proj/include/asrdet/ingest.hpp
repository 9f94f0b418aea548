#pragma once

// Transcript acquisition: JSONL-backed store, deterministic mock ASR,
// generic HTTP ASR client, and parallel fan-out across backends.
//
// JSONL schema, one object per line, UTF-8, LF:
//   {"audio_id": "...", "asr_id": "...", "text": "..."}
// HTTP contract: POST {"audio_id": ..., "audio_b64": ...}, expect {"text": ...}.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "asrdet/errors.hpp"
#include "asrdet/synth.hpp"
#include "asrdet/transcript.hpp"

namespace asrdet {

inline TranscriptStore load_store(std::istream& is) {
    TranscriptStore store;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("transcript line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("audio_id") || !j.contains("asr_id") || !j.contains("text"))
            throw ParseError("transcript line " + std::to_string(lineno) +
                             ": expected audio_id/asr_id/text");
        store.add({j["audio_id"].get<std::string>(), j["asr_id"].get<std::string>(),
                   j["text"].get<std::string>()});
    }
    return store;
}

inline TranscriptStore load_store(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw NotFound("transcript file " + path);
    return load_store(is);
}

inline void save_store(std::ostream& os, const TranscriptStore& store) {
    for (const auto& [key, t] : store) {
        nlohmann::json j{{"audio_id", t.audio_id}, {"asr_id", t.asr_id}, {"text", t.text}};
        os << j.dump() << '\n';
    }
}

inline void save_store(const std::string& path, const TranscriptStore& store) {
    std::ofstream os(path);
    if (!os) throw NotFound("cannot write " + path);
    save_store(os, store);
}

class AsrBackend {
public:
    virtual ~AsrBackend() = default;
    virtual const std::string& asr_id() const = 0;
    virtual Transcript transcribe(const std::string& audio_id,
                                  const std::optional<std::string>& audio_bytes) const = 0;
};

// Serves transcripts from a preloaded store.
class FileBackend final : public AsrBackend {
public:
    FileBackend(std::string asr_id, TranscriptStore store)
        : asr_id_(std::move(asr_id)), store_(std::move(store)) {}

    const std::string& asr_id() const override { return asr_id_; }

    Transcript transcribe(const std::string& audio_id,
                          const std::optional<std::string>&) const override {
        const Transcript* t = store_.find(audio_id, asr_id_);
        if (!t) throw NotFound("audio " + audio_id + " on backend " + asr_id_);
        return *t;
    }

private:
    std::string asr_id_;
    TranscriptStore store_;
};

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t seed, const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace detail

// Perturbs reference transcripts at a word-substitution rate; the RNG seed
// is derived from (seed, audio_id), so each audio is deterministic on its
// own. An injectable latency supports timing experiments.
class MockBackend final : public AsrBackend {
public:
    MockBackend(std::string asr_id, TranscriptStore reference, double wer, std::uint64_t seed,
                std::chrono::milliseconds latency = {})
        : asr_id_(std::move(asr_id)),
          reference_(std::move(reference)),
          wer_(wer),
          seed_(seed),
          latency_(latency) {
        if (wer < 0.0 || wer >= 1.0) throw InvalidSpec("mock wer must lie in [0, 1)");
    }

    const std::string& asr_id() const override { return asr_id_; }

    Transcript transcribe(const std::string& audio_id,
                          const std::optional<std::string>&) const override {
        const Transcript* t = reference_.find(audio_id, asr_id_);
        if (!t) throw NotFound("audio " + audio_id + " on backend " + asr_id_);
        if (latency_.count() > 0) std::this_thread::sleep_for(latency_);
        std::mt19937_64 rng(detail::fnv1a(seed_, audio_id));
        return {audio_id, asr_id_, synth_perturb(t->text, rng)};
    }

private:
    std::string synth_perturb(const std::string& text, std::mt19937_64& rng) const {
        if (wer_ == 0.0) return text;
        return asrdet::detail::perturb_words(text, wer_, rng);
    }

    std::string asr_id_;
    TranscriptStore reference_;
    double wer_;
    std::uint64_t seed_;
    std::chrono::milliseconds latency_;
};

struct HttpBackendConfig {
    std::string asr_id;
    std::string host;      // scheme://host:port
    std::string path = "/transcribe";
    std::string auth_header;  // optional, e.g. "Authorization"
    std::string auth_value;
    double timeout_s = 10.0;
    int retries = 0;  // additional attempts after the first
};

namespace detail {

inline std::string base64_encode(const std::string& in) {
    static const char* alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((in.size() + 2) / 3 * 4);
    std::size_t i = 0;
    while (i + 2 < in.size()) {
        const std::uint32_t v = (static_cast<unsigned char>(in[i]) << 16) |
                                (static_cast<unsigned char>(in[i + 1]) << 8) |
                                static_cast<unsigned char>(in[i + 2]);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back(alphabet[v & 63]);
        i += 3;
    }
    if (i + 1 == in.size()) {
        const std::uint32_t v = static_cast<unsigned char>(in[i]) << 16;
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out += "==";
    } else if (i + 2 == in.size()) {
        const std::uint32_t v = (static_cast<unsigned char>(in[i]) << 16) |
                                (static_cast<unsigned char>(in[i + 1]) << 8);
        out.push_back(alphabet[(v >> 18) & 63]);
        out.push_back(alphabet[(v >> 12) & 63]);
        out.push_back(alphabet[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

}  // namespace detail

// Defined in ingest_http.hpp to keep httplib out of translation units that
// never talk to a live ASR.
class HttpBackend;

struct FanoutResult {
    std::map<std::string, Transcript> transcripts;   // keyed by asr_id
    std::map<std::string, std::string> failures;     // asr_id -> cause

    bool ok() const { return failures.empty(); }

    std::string failure_summary() const {
        std::string s;
        for (const auto& [id, cause] : failures) {
            if (!s.empty()) s += "; ";
            s += id + ": " + cause;
        }
        return s;
    }
};

// All backends queried concurrently; total latency tracks the slowest
// backend, not the sum. Partial failure is reported per backend, with
// successes preserved.
inline FanoutResult transcribe_all(const std::vector<const AsrBackend*>& backends,
                                   const std::string& audio_id,
                                   const std::optional<std::string>& audio_bytes = std::nullopt) {
    for (std::size_t i = 0; i < backends.size(); ++i)
        for (std::size_t j = i + 1; j < backends.size(); ++j)
            if (backends[i]->asr_id() == backends[j]->asr_id())
                throw InvalidSpec("duplicate backend asr_id: " + backends[i]->asr_id());

    std::vector<std::future<Transcript>> futures;
    futures.reserve(backends.size());
    for (const AsrBackend* b : backends)
        futures.push_back(std::async(std::launch::async, [b, &audio_id, &audio_bytes] {
            return b->transcribe(audio_id, audio_bytes);
        }));

    FanoutResult result;
    for (std::size_t i = 0; i < backends.size(); ++i) {
        try {
            Transcript t = futures[i].get();
            result.transcripts.emplace(backends[i]->asr_id(), std::move(t));
        } catch (const std::exception& e) {
            result.failures.emplace(backends[i]->asr_id(), e.what());
        }
    }
    return result;
}

}  // namespace asrdet
