#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace redlab {

enum class ErrorCode {
  EmptyInput,
  NegativeProbability,
  SumNotOne,
  BadRadix,
  OutOfRange,
  NegativeIndex,
  NotInternal,
  RootNode,
  ZeroProbabilityNode,
  MissingSymbol,
  IndexOutOfRange,
  ZeroLeaf,
  InfeasibleDepth,
  GridTooFine,
  BadConstraint,
  NoConvergence,
  NotCanonical,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace redlab
