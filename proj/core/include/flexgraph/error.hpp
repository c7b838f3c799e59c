#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flexgraph {

enum class ErrorCode {
  // instance validation
  UnbalancedTotals,
  NegativeRate,
  EdgeOutOfRange,
  DuplicateEdge,
  ZeroVector,
  // polytope / decomposition
  Infeasible,
  NotFeasiblePoint,
  EdgeNotPresent,
  NotAPartition,
  InvariantViolation,
  SizeLimitExceeded,
  // design
  TargetAboveDstarStar,
  InternalMergeStuck,
  // augmentation / planning
  EdgeAlreadyPresent,
  IndexOutOfRange,
  AlreadyCrp,
  InvalidK,
  // robustness
  GapUndefined,
  // simulation
  IsolatedServer,
  InvalidEpsilon,
  InvalidModel,
  // generic
  InvalidArgument,
  ParseError,
  IoError,
  UsageError,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed input text, files or arguments rather
/// than by the mathematics of a well-formed request.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string datum = {});

  ErrorCode code() const noexcept { return code_; }
  /// The offending value, rendered as text (may be empty).
  const std::string& datum() const noexcept { return datum_; }

 private:
  ErrorCode code_;
  std::string datum_;
};

}  // namespace flexgraph
