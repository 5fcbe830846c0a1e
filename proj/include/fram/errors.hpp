#pragma once

#include <stdexcept>
#include <string>

namespace fram {

enum class ErrorCode {
    DuplicateFunctionId,
    UnknownFunction,
    OutputAsDestinationAspect,
    DuplicateQuadruple,
    NonPositiveWeight,
    InvalidModel,
    ZeroMargin,
    DegenerateSeries,
    MisalignedSeries,
    ZeroUpstreamVariability,
    NoMajority,
    BagTooLarge,
    ValueOutOfScale,
    UnknownRelationship,
    IoError,
    SchemaError,
    ValidationError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateFunctionId: return "DuplicateFunctionId";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::OutputAsDestinationAspect: return "OutputAsDestinationAspect";
    case ErrorCode::DuplicateQuadruple: return "DuplicateQuadruple";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::ZeroMargin: return "ZeroMargin";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::MisalignedSeries: return "MisalignedSeries";
    case ErrorCode::ZeroUpstreamVariability: return "ZeroUpstreamVariability";
    case ErrorCode::NoMajority: return "NoMajority";
    case ErrorCode::BagTooLarge: return "BagTooLarge";
    case ErrorCode::ValueOutOfScale: return "ValueOutOfScale";
    case ErrorCode::UnknownRelationship: return "UnknownRelationship";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
    }
    return "UnknownError";
}

/// Domain error carrying a machine-checkable code plus a human message.
class FramError : public std::runtime_error {
public:
    FramError(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw FramError(code, message);
}

} // namespace fram
