#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace synrep {

enum class ErrorCode {
  // treebank
  EmptyInput,
  UnbalancedBrackets,
  EmptyNode,
  MissingLabel,
  InvalidLabel,
  UnexpectedToken,
  EmptyCorpus,
  // linearizer
  UnknownLabel,
  // numerics
  NonFiniteInput,
  NoConvergence,
  DegenerateInput,
  NonFiniteEvaluation,
  // encoder
  IdOutOfRange,
  DimensionMismatch,
  CacheMismatch,
  // prosody
  CountMismatch,
  ZeroCount,
  UnknownWord,
  UnknownPhoneme,
  NonFiniteLoss,
  // ambiguity
  SearchSpaceTooLarge,
  // plumbing
  InvalidArgument,
  IoError,
  FormatError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `code()` is stable and is what tests
/// match on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace synrep
