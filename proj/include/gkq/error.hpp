// SPDX-License-Identifier: Apache-2.0
#ifndef GKQ_ERROR_HPP
#define GKQ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gkq {

/// Error categories; values mirror the C API status codes.
enum class ErrorCode {
  DimensionMismatch = 2,
  InvalidInput = 3,
  NotInvariant = 4,
  Degenerate = 5,
  NoConvergence = 6,
  SingularLevel = 7,
  EigenFailure = 8,
  EvaluationFailure = 9,
  ConditionFailure = 10,
  UnknownScenario = 11,
  Io = 12,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gkq

#endif  // GKQ_ERROR_HPP
