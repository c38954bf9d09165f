#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace annsketch {

enum class ErrorKind {
    DimensionMismatch,
    IndexOutOfRange,
    InvalidApproximation,
    InvalidParams,
    Infeasible,
    LengthMismatch,
    ApproxOutOfRange,
    DomainError,
    InvalidState,
    InvalidPovm,
    InvalidEnsemble,
    UnsupportedPrior,
    InvalidScheme,
    SubRandomDecoder,
    IncompatibleSketch,
    TooLarge,
    NoMarked,
    RegimeViolation,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidApproximation: return "InvalidApproximation";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ApproxOutOfRange: return "ApproxOutOfRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::InvalidPovm: return "InvalidPovm";
    case ErrorKind::InvalidEnsemble: return "InvalidEnsemble";
    case ErrorKind::UnsupportedPrior: return "UnsupportedPrior";
    case ErrorKind::InvalidScheme: return "InvalidScheme";
    case ErrorKind::SubRandomDecoder: return "SubRandomDecoder";
    case ErrorKind::IncompatibleSketch: return "IncompatibleSketch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NoMarked: return "NoMarked";
    case ErrorKind::RegimeViolation: return "RegimeViolation";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI) can branch on the category without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

} // namespace annsketch
