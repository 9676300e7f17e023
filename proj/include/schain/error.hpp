#pragma once

#include <stdexcept>
#include <string>

namespace schain {

// Error taxonomy; the CLI maps categories to exit codes.
enum class ErrorKind {
  // usage / configuration
  BadConfig,
  // data
  FileNotFound,
  MalformedRecord,
  UnknownType,
  DuplicateId,
  DanglingEndpoint,
  UndeclaredLinkType,
  AttributeRowMismatch,
  NonFiniteValue,
  NoSuchLinkType,
  AsymmetricPath,
  ContradictoryConstraint,
  UnknownId,
  SelfPair,
  TooFewObjects,
  PartialLabeling,
  SingleCluster,
  DimensionMismatch,
  ObjectSetMismatch,
  // numerical
  CountOverflow,
  NonSymmetric,
  InfeasibleWeights,
  EigenFailure,
  InvariantViolation,
};

enum class ErrorCategory { Usage, Data, Numerical };

ErrorCategory category_of(ErrorKind kind);
std::string_view name_of(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::string(name_of(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }
  ErrorCategory category() const { return category_of(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace schain
