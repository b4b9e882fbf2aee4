#pragma once

#include <stdexcept>
#include <string>

namespace mutamatic {

// Engine faults that callers are expected to handle (bad configuration,
// broken input corpus, contract violations). The category keeps error
// handling in the CLI and tests free of message matching.
enum class ErrorKind {
    AnchorNotFound,
    EncodingError,
    BuildError,
    SelectorUnknown,
    PreGateFailed,
    FixtureExhausted,
    EmptyDenominator,
    NoReachableMutants,
    CorpusError,
    ConfigError,
};

class EngineError : public std::runtime_error {
public:
    EngineError(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace mutamatic
