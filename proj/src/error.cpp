#include "synrep/error.hpp"

namespace synrep {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnbalancedBrackets: return "UnbalancedBrackets";
    case ErrorCode::EmptyNode: return "EmptyNode";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::UnexpectedToken: return "UnexpectedToken";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorCode::IdOutOfRange: return "IdOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CacheMismatch: return "CacheMismatch";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::ZeroCount: return "ZeroCount";
    case ErrorCode::UnknownWord: return "UnknownWord";
    case ErrorCode::UnknownPhoneme: return "UnknownPhoneme";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

}  // namespace synrep
