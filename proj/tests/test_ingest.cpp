#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "asrdet/ingest.hpp"
#include "asrdet/ingest_http.hpp"

using namespace asrdet;

namespace {

TranscriptStore small_store() {
    TranscriptStore store;
    store.add({"a1", "ds0", "hello world"});
    store.add({"a1", "ds1", "hello world"});
    store.add({"a2", "ds0", "good morning"});
    return store;
}

}  // namespace

TEST_CASE("load_store parses JSONL") {
    std::stringstream ss(
        R"({"audio_id":"a1","asr_id":"ds0","text":"hello"})" "\n"
        R"({"audio_id":"a1","asr_id":"ds1","text":"hullo"})" "\n"
        R"({"audio_id":"a2","asr_id":"ds0","text":"bye"})" "\n");
    TranscriptStore store = load_store(ss);
    CHECK(store.size() == 3);
    CHECK(store.at("a1", "ds1").text == "hullo");
}

TEST_CASE("load_store reports malformed lines with their number") {
    std::stringstream ss(
        R"({"audio_id":"a1","asr_id":"ds0","text":"ok"})" "\n"
        R"({"audio_id":"a2","asr_id":"ds0"})" "\n");
    try {
        load_store(ss);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("duplicate keys are rejected") {
    std::stringstream ss(
        R"({"audio_id":"a1","asr_id":"ds0","text":"x"})" "\n"
        R"({"audio_id":"a1","asr_id":"ds0","text":"y"})" "\n");
    CHECK_THROWS_AS(load_store(ss), DuplicateTranscript);
}

TEST_CASE("store round-trips through JSONL") {
    TranscriptStore store = small_store();
    std::stringstream ss;
    save_store(ss, store);
    CHECK(load_store(ss) == store);
}

TEST_CASE("file backend serves and misses") {
    FileBackend backend("ds0", small_store());
    CHECK(backend.transcribe("a1", std::nullopt).text == "hello world");
    CHECK_THROWS_AS(backend.transcribe("missing", std::nullopt), NotFound);
}

TEST_CASE("mock backend is a pure function of (reference, wer, seed, audio_id)") {
    MockBackend mock("ds1", small_store(), 0.5, 11);
    const std::string once = mock.transcribe("a1", std::nullopt).text;
    CHECK(mock.transcribe("a1", std::nullopt).text == once);

    MockBackend verbatim("ds1", small_store(), 0.0, 11);
    CHECK(verbatim.transcribe("a1", std::nullopt).text == "hello world");

    CHECK_THROWS_AS(MockBackend("ds1", small_store(), 1.0, 11), InvalidSpec);
}

TEST_CASE("transcribe_all fans out and preserves partial successes") {
    FileBackend b0("ds0", small_store());
    FileBackend b1("ds1", small_store());
    MockBackend b2("gcs", small_store(), 0.0, 1);  // no gcs rows: always misses

    FanoutResult ok = transcribe_all({&b0, &b1}, "a1");
    CHECK(ok.ok());
    CHECK(ok.transcripts.size() == 2);

    FanoutResult partial = transcribe_all({&b0, &b1, &b2}, "a1");
    CHECK_FALSE(partial.ok());
    CHECK(partial.transcripts.size() == 2);
    REQUIRE(partial.failures.size() == 1);
    CHECK(partial.failures.count("gcs") == 1);

    CHECK(transcribe_all({}, "a1").transcripts.empty());

    FileBackend dup("ds0", small_store());
    CHECK_THROWS_AS(transcribe_all({&b0, &dup}, "a1"), InvalidSpec);
}

TEST_CASE("http backend round-trip against a local server") {
    httplib::Server server;
    int hits = 0;
    server.Post("/transcribe", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        auto j = nlohmann::json::parse(req.body);
        res.set_content(nlohmann::json{{"text", "heard " + j["audio_id"].get<std::string>()}}.dump(),
                        "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpBackend backend({"gcs", "http://127.0.0.1:" + std::to_string(port)});
    Transcript t = backend.transcribe("a7", std::string("\x01\x02 audio bytes"));
    CHECK(t.text == "heard a7");
    CHECK(t.asr_id == "gcs");
    CHECK(hits == 1);

    CHECK_THROWS_AS(backend.transcribe("a7", std::nullopt), InvalidSpec);

    server.stop();
    server_thread.join();
}

TEST_CASE("http backend retries then reports a bad response") {
    httplib::Server server;
    int hits = 0;
    server.Post("/transcribe", [&](const httplib::Request&, httplib::Response& res) {
        ++hits;
        res.status = 500;
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpBackendConfig config{"gcs", "http://127.0.0.1:" + std::to_string(port)};
    config.retries = 2;
    HttpBackend backend(config);
    CHECK_THROWS_AS(backend.transcribe("a1", std::string("bytes")), BadResponse);
    CHECK(hits == 3);

    server.stop();
    server_thread.join();
}

TEST_CASE("base64 encoding") {
    CHECK(detail::base64_encode("") == "");
    CHECK(detail::base64_encode("f") == "Zg==");
    CHECK(detail::base64_encode("fo") == "Zm8=");
    CHECK(detail::base64_encode("foo") == "Zm9v");
    CHECK(detail::base64_encode("foobar") == "Zm9vYmFy");
}
