#pragma once

#include <map>
#include <string>
#include <utility>

#include "asrdet/errors.hpp"

namespace asrdet {

// One ASR's output for one audio.
struct Transcript {
    std::string audio_id;
    std::string asr_id;
    std::string text;

    bool operator==(const Transcript&) const = default;
};

// In-memory transcript collection keyed by (audio_id, asr_id).
class TranscriptStore {
public:
    using Key = std::pair<std::string, std::string>;

    void add(Transcript t) {
        Key key{t.audio_id, t.asr_id};
        auto [it, inserted] = items_.emplace(std::move(key), std::move(t));
        if (!inserted) throw DuplicateTranscript(it->first.first, it->first.second);
    }

    const Transcript* find(const std::string& audio_id, const std::string& asr_id) const {
        auto it = items_.find(Key{audio_id, asr_id});
        return it == items_.end() ? nullptr : &it->second;
    }

    const Transcript& at(const std::string& audio_id, const std::string& asr_id) const {
        const Transcript* t = find(audio_id, asr_id);
        if (!t) throw MissingTranscript(audio_id, asr_id);
        return *t;
    }

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }

    bool operator==(const TranscriptStore&) const = default;

private:
    std::map<Key, Transcript> items_;
};

}  // namespace asrdet
