#pragma once

#include <stdexcept>
#include <string>

namespace conelab {

enum class ErrorCode {
  dimension_mismatch,
  canonical_missing,
  underdetermined,
  inconsistent,
  wrong_count,
  not_spanning,
  degenerate_pairing,
  invalid_argument,
  inconsistent_cover,
  inconsistent_incidence,
  schema,
  unverified,
};

const char* to_string(ErrorCode code);

/// Error raised by every conelab module. The code is stable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace conelab
