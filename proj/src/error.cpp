#include "shellsat/error.hpp"

namespace shellsat {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedFace: return "malformed-face";
    case ErrorKind::EmptyComplex: return "empty-complex";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::NotAFace: return "not-a-face";
    case ErrorKind::NotFree: return "not-free";
    case ErrorKind::MalformedCertificate: return "malformed-certificate";
    case ErrorKind::Purity: return "purity";
    case ErrorKind::Connectivity: return "connectivity";
    case ErrorKind::Containment: return "containment";
    case ErrorKind::Flagness: return "flagness";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::OracleBound: return "oracle-bound";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index)
    : std::runtime_error(message), kind_(kind), index_(index) {}

}  // namespace shellsat
