#pragma once

#include <stdexcept>
#include <string>

namespace asrdet {

// Exit-code category for the CLI: data errors (bad/missing input) vs
// computation errors (degenerate training, dimension mismatch).
enum class ErrorKind { Usage = 1, Data = 2, Computation = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(ErrorKind::Data, "parse error: " + msg) {}
};

struct DuplicateTranscript : Error {
    DuplicateTranscript(const std::string& audio_id, const std::string& asr_id)
        : Error(ErrorKind::Data, "duplicate transcript for (" + audio_id + ", " + asr_id + ")") {}
};

struct MissingTranscript : Error {
    MissingTranscript(const std::string& audio_id, const std::string& asr_id)
        : Error(ErrorKind::Data, "missing transcript for (" + audio_id + ", " + asr_id + ")"),
          asr_id(asr_id) {}
    std::string asr_id;
};

struct NotFound : Error {
    explicit NotFound(const std::string& what) : Error(ErrorKind::Data, "not found: " + what) {}
};

struct Timeout : Error {
    explicit Timeout(const std::string& what) : Error(ErrorKind::Data, "timeout: " + what) {}
};

struct BadResponse : Error {
    explicit BadResponse(const std::string& what) : Error(ErrorKind::Data, "bad response: " + what) {}
};

struct DegenerateTraining : Error {
    explicit DegenerateTraining(const std::string& msg)
        : Error(ErrorKind::Computation, "degenerate training: " + msg) {}
};

struct DimensionMismatch : Error {
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error(ErrorKind::Computation,
                "dimension mismatch: expected " + std::to_string(expected) + ", got " +
                    std::to_string(actual)) {}
};

struct EmptyPool : Error {
    explicit EmptyPool(const std::string& which) : Error(ErrorKind::Data, "empty score pool: " + which) {}
};

struct UnknownAsr : Error {
    explicit UnknownAsr(const std::string& asr_id) : Error(ErrorKind::Data, "unknown asr id: " + asr_id) {}
};

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& msg) : Error(ErrorKind::Data, "invalid spec: " + msg) {}
};

struct InvalidSplit : Error {
    explicit InvalidSplit(const std::string& msg) : Error(ErrorKind::Computation, "invalid split: " + msg) {}
};

struct LabelError : Error {
    explicit LabelError(const std::string& msg) : Error(ErrorKind::Data, "label error: " + msg) {}
};

}  // namespace asrdet
