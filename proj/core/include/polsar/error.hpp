#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polsar {

enum class ErrorCode {
    EmptySampleSet,
    NotPositiveDefinite,
    InvalidVariance,
    DimensionMismatch,
    QuadratureFailed,
    OutOfRange,
    DegenerateInput,
    InvalidParams,
    InternalInvariantViolation,
    EmptyRaster,
    BadSceneSpec,
    BadRoi,
    SizeMismatch,
    MissingBand,
    BadMetadata,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` lets callers (the CLI in
/// particular) dispatch without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EmptySampleSet: return "EmptySampleSet";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InvalidVariance: return "InvalidVariance";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::QuadratureFailed: return "QuadratureFailed";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::EmptyRaster: return "EmptyRaster";
    case ErrorCode::BadSceneSpec: return "BadSceneSpec";
    case ErrorCode::BadRoi: return "BadRoi";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::MissingBand: return "MissingBand";
    case ErrorCode::BadMetadata: return "BadMetadata";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace polsar
