#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rimrl {

enum class ErrorKind {
  InvalidSampleSize,
  DegenerateSample,
  InvalidLevel,
  Domain,
  UnestimableTail,
  Numeric,
  Parse,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers (the CLI in
/// particular) how to classify the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rimrl
