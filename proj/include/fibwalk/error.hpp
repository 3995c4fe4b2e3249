#pragma once

#include <stdexcept>
#include <string>

namespace fibwalk {

// Signals raised by library operations. The CLI maps categories onto its
// exit-code contract: usage -> 2, numerical -> 3, io -> 4.
enum class ErrorCode {
  invalid_capacity,
  normalization,
  capacity_exceeded,
  invalid_index,
  budget_exceeded,
  non_su2,
  grid_mismatch,
  invalid_invariant,
  divergence,
  log_domain,
  insufficient_data,
  degenerate_series,
  invalid_series,
  bad_parameter,
  io_failure,
};

enum class ErrorCategory { usage, numerical, io };

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  ErrorCategory category() const noexcept {
    switch (code_) {
      case ErrorCode::invalid_capacity:
      case ErrorCode::capacity_exceeded:
      case ErrorCode::invalid_index:
      case ErrorCode::budget_exceeded:
      case ErrorCode::grid_mismatch:
      case ErrorCode::invalid_invariant:
      case ErrorCode::invalid_series:
      case ErrorCode::bad_parameter:
        return ErrorCategory::usage;
      case ErrorCode::io_failure:
        return ErrorCategory::io;
      default:
        return ErrorCategory::numerical;
    }
  }

private:
  ErrorCode code_;
};

}  // namespace fibwalk
