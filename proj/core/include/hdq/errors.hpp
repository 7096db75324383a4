#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdq {

enum class ErrorCode {
    MalformedInput,
    MappingError,
    DuplicateId,
    DuplicateLabel,
    MultiplePrimary,
    UnknownDimension,
    SamePair,
    ZeroMargin,
    EmptyMatrix,
    UnknownProblemId,
    UnresolvablePath,
    DanglingFindingPath,
    ConfigMismatch,
    UnsupportedFormat,
    InvalidUri,
    WrongKind,
    IoError,
};

/// Single exception type for all recoverable failures; `code()` identifies
/// the failure class so callers can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(to_label(code) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    static std::string to_label(ErrorCode code) {
        switch (code) {
        case ErrorCode::MalformedInput: return "MalformedInput";
        case ErrorCode::MappingError: return "MappingError";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::DuplicateLabel: return "DuplicateLabel";
        case ErrorCode::MultiplePrimary: return "MultiplePrimary";
        case ErrorCode::UnknownDimension: return "UnknownDimension";
        case ErrorCode::SamePair: return "SamePair";
        case ErrorCode::ZeroMargin: return "ZeroMargin";
        case ErrorCode::EmptyMatrix: return "EmptyMatrix";
        case ErrorCode::UnknownProblemId: return "UnknownProblemId";
        case ErrorCode::UnresolvablePath: return "UnresolvablePath";
        case ErrorCode::DanglingFindingPath: return "DanglingFindingPath";
        case ErrorCode::ConfigMismatch: return "ConfigMismatch";
        case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
        case ErrorCode::InvalidUri: return "InvalidUri";
        case ErrorCode::WrongKind: return "WrongKind";
        case ErrorCode::IoError: return "IoError";
        }
        return "Error";
    }

private:
    ErrorCode code_;
};

}  // namespace hdq
