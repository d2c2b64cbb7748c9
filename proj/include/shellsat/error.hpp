#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shellsat {

enum class ErrorKind {
  MalformedFace,
  EmptyComplex,
  UnsupportedDimension,
  NotAFace,
  NotFree,
  MalformedCertificate,
  Purity,
  Connectivity,
  Containment,
  Flagness,
  Parameter,
  Parse,
  OracleBound,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception type for every contract violation raised by the library. The
/// optional index points at the offending certificate entry or input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

}  // namespace shellsat
