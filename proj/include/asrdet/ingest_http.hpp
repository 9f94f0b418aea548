#pragma once

// HTTP ASR client. Split from ingest.hpp so only translation units that
// reach a live backend pay for httplib.

#include <chrono>
#include <random>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "asrdet/ingest.hpp"

namespace asrdet {

class HttpBackend final : public AsrBackend {
public:
    explicit HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
        if (config_.timeout_s <= 0.0) throw InvalidSpec("http timeout must be positive");
        if (config_.retries < 0) throw InvalidSpec("http retries must be non-negative");
    }

    const std::string& asr_id() const override { return config_.asr_id; }

    Transcript transcribe(const std::string& audio_id,
                          const std::optional<std::string>& audio_bytes) const override {
        if (!audio_bytes) throw InvalidSpec("http backend requires audio bytes");
        nlohmann::json body{{"audio_id", audio_id},
                            {"audio_b64", detail::base64_encode(*audio_bytes)}};
        const std::string payload = body.dump();

        std::string last_error = "no attempt made";
        bool last_was_timeout = false;
        std::mt19937_64 jitter_rng(std::random_device{}());
        for (int attempt = 0; attempt <= config_.retries; ++attempt) {
            if (attempt > 0) {
                // Exponential backoff, base 250 ms, with jitter. Transcription
                // is read-only, so retrying is idempotent.
                const auto base = std::chrono::milliseconds(250) * (1 << (attempt - 1));
                const auto jitter = std::chrono::milliseconds(jitter_rng() % 100);
                std::this_thread::sleep_for(base + jitter);
            }
            httplib::Client client(config_.host);
            const auto timeout = std::chrono::duration<double>(config_.timeout_s);
            client.set_connection_timeout(timeout);
            client.set_read_timeout(timeout);
            httplib::Headers headers;
            if (!config_.auth_header.empty())
                headers.emplace(config_.auth_header, config_.auth_value);

            auto res = client.Post(config_.path, headers, payload, "application/json");
            if (!res) {
                last_error = "transport error: " + httplib::to_string(res.error());
                last_was_timeout = res.error() == httplib::Error::ConnectionTimeout ||
                                   res.error() == httplib::Error::Read ||
                                   res.error() == httplib::Error::Write;
                continue;
            }
            if (res->status < 200 || res->status >= 300) {
                last_error = "status " + std::to_string(res->status);
                last_was_timeout = false;
                continue;
            }
            try {
                auto j = nlohmann::json::parse(res->body);
                if (!j.is_object() || !j.contains("text") || !j["text"].is_string())
                    throw BadResponse("backend " + config_.asr_id + ": response lacks text field");
                return {audio_id, config_.asr_id, j["text"].get<std::string>()};
            } catch (const nlohmann::json::parse_error&) {
                throw BadResponse("backend " + config_.asr_id + ": response is not JSON");
            }
        }
        const std::string summary = "backend " + config_.asr_id + " after " +
                                    std::to_string(config_.retries + 1) +
                                    " attempt(s): " + last_error;
        if (last_was_timeout) throw Timeout(summary);
        throw BadResponse(summary);
    }

private:
    HttpBackendConfig config_;
};

}  // namespace asrdet
