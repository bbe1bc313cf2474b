#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftlab {

enum class ErrorCode {
    InvalidDimension,
    InvalidResolution,
    IndexOutOfRange,
    AmbiguousLift,
    InvalidDeckElement,
    StepTooLarge,
    HolonomyObstruction,
    ProjectionMismatch,
    EmptyField,
    NonRealField,
    NotOneDimensional,
    BadSigma,
    BadEta,
    SubcriticalExponent,
    DomainMismatch,
    NotConvexDomain,
    ExponentOutOfRange,
    ExponentConditionViolated,
    ParseError,
    SchemaError,
    RangeError,
    EmptySeries,
    IoError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidDimension: return "InvalidDimension";
        case ErrorCode::InvalidResolution: return "InvalidResolution";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::AmbiguousLift: return "AmbiguousLift";
        case ErrorCode::InvalidDeckElement: return "InvalidDeckElement";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::HolonomyObstruction: return "HolonomyObstruction";
        case ErrorCode::ProjectionMismatch: return "ProjectionMismatch";
        case ErrorCode::EmptyField: return "EmptyField";
        case ErrorCode::NonRealField: return "NonRealField";
        case ErrorCode::NotOneDimensional: return "NotOneDimensional";
        case ErrorCode::BadSigma: return "BadSigma";
        case ErrorCode::BadEta: return "BadEta";
        case ErrorCode::SubcriticalExponent: return "SubcriticalExponent";
        case ErrorCode::DomainMismatch: return "DomainMismatch";
        case ErrorCode::NotConvexDomain: return "NotConvexDomain";
        case ErrorCode::ExponentOutOfRange: return "ExponentOutOfRange";
        case ErrorCode::ExponentConditionViolated: return "ExponentConditionViolated";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::RangeError: return "RangeError";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

/// Base error for every failure the library can signal.  The code is kept
/// alongside the message so callers (and the CLI) can dispatch without
/// string matching.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

/// A path/field step exceeded the injectivity radius; `index` identifies the
/// offending sample (or edge endpoint).
class StepTooLargeError : public Error {
  public:
    StepTooLargeError(std::size_t index, const std::string& what)
        : Error(ErrorCode::StepTooLarge, what), index_(index) {}

    std::size_t index() const { return index_; }

  private:
    std::size_t index_;
};

/// A grid cycle fails to close under nearest-sheet continuation.  The cycle
/// witness lists grid indices of a closed loop whose lift jumps sheets.
class HolonomyError : public Error {
  public:
    HolonomyError(std::vector<std::size_t> cycle, double residual, const std::string& what)
        : Error(ErrorCode::HolonomyObstruction, what), cycle_(std::move(cycle)), residual_(residual) {}

    const std::vector<std::size_t>& cycle() const { return cycle_; }
    double residual() const { return residual_; }

  private:
    std::vector<std::size_t> cycle_;
    double residual_;
};

}  // namespace liftlab
