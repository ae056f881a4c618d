#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gptmap {

enum class ErrorCode {
    InvalidShape,
    InvalidResolution,
    SingularGeometry,
    UnsupportedGeometry,
    InvalidRhs,
    NumericalFailure,
    ResolutionInsufficient,
    NotSimplyConnected,
    Normalization,
    Domain,
    EvaluationRegion,
    DegenerateDomain,
    Resonance,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. Every failure raised by gptmap carries a code so
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace gptmap
