#include "rimrl/error.hpp"

namespace rimrl {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSampleSize: return "invalid-sample-size";
    case ErrorKind::DegenerateSample: return "degenerate-sample";
    case ErrorKind::InvalidLevel: return "invalid-level";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::UnestimableTail: return "unestimable-tail";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InvalidConfig: return "invalid-config";
  }
  return "unknown";
}

}  // namespace rimrl
