#include "gptmap/error.hpp"

namespace gptmap {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidShape: return "invalid-shape";
    case ErrorCode::InvalidResolution: return "invalid-resolution";
    case ErrorCode::SingularGeometry: return "singular-geometry";
    case ErrorCode::UnsupportedGeometry: return "unsupported-geometry";
    case ErrorCode::InvalidRhs: return "invalid-rhs";
    case ErrorCode::NumericalFailure: return "numerical-failure";
    case ErrorCode::ResolutionInsufficient: return "resolution-insufficient";
    case ErrorCode::NotSimplyConnected: return "not-simply-connected-or-underresolved";
    case ErrorCode::Normalization: return "normalization";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::EvaluationRegion: return "evaluation-region";
    case ErrorCode::DegenerateDomain: return "degenerate-domain";
    case ErrorCode::Resonance: return "resonance";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

} // namespace gptmap
