#include "flexgraph/error.hpp"

namespace flexgraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnbalancedTotals: return "UnbalancedTotals";
    case ErrorCode::NegativeRate: return "NegativeRate";
    case ErrorCode::EdgeOutOfRange: return "EdgeOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotFeasiblePoint: return "NotFeasiblePoint";
    case ErrorCode::EdgeNotPresent: return "EdgeNotPresent";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::TargetAboveDstarStar: return "TargetAboveDstarStar";
    case ErrorCode::InternalMergeStuck: return "InternalMergeStuck";
    case ErrorCode::EdgeAlreadyPresent: return "EdgeAlreadyPresent";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::AlreadyCrp: return "AlreadyCrp";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::GapUndefined: return "GapUndefined";
    case ErrorCode::IsolatedServer: return "IsolatedServer";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  return code == ErrorCode::ParseError || code == ErrorCode::IoError ||
         code == ErrorCode::UsageError;
}

Error::Error(ErrorCode code, const std::string& message, std::string datum)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      datum_(std::move(datum)) {}

}  // namespace flexgraph
