#pragma once

#include <stdexcept>
#include <string>

namespace bell {

enum class ErrorCode {
    // scenario construction / validation
    EmptyParty,
    EmptyMeasurement,
    DuplicateOutcome,
    LengthMismatch,
    BadNormalization,
    MagnitudeExceedsBound,
    ScenarioMismatch,
    // linear programming
    DimensionMismatch,
    IterationLimit,
    NotOptimal,
    InvalidCertificate,
    // resource caps
    SizeLimit,
    // quantum front end
    OutOfRange,
    NotAState,
    NotHermitian,
    SpectrumMismatch,
    // document layer
    ParseError,
    // violated internal invariant (never a verdict)
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace bell
