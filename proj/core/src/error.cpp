#include "perseus/error.hpp"

namespace perseus {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::MalformedPayload: return "malformed-payload";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::InvalidBounds: return "invalid-bounds";
    case ErrorKind::GenerationFailure: return "generation-failure";
    case ErrorKind::InvalidRange: return "invalid-range";
    case ErrorKind::ParamsTooLarge: return "parameters-too-large";
    case ErrorKind::AmbiguousDecode: return "ambiguous-decode";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Format: return "format";
    case ErrorKind::Corruption: return "corruption";
    case ErrorKind::InvalidParams: return "invalid-params";
    case ErrorKind::Sequence: return "sequence";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::HypothesisSpaceTooLarge: return "hypothesis-space-too-large";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace perseus
