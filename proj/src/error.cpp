#include "schain/error.hpp"

namespace schain {

ErrorCategory category_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadConfig:
      return ErrorCategory::Usage;
    case ErrorKind::CountOverflow:
    case ErrorKind::NonSymmetric:
    case ErrorKind::InfeasibleWeights:
    case ErrorKind::EigenFailure:
    case ErrorKind::InvariantViolation:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Data;
  }
}

std::string_view name_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::MalformedRecord: return "MalformedRecord";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorKind::UndeclaredLinkType: return "UndeclaredLinkType";
    case ErrorKind::AttributeRowMismatch: return "AttributeRowMismatch";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::NoSuchLinkType: return "NoSuchLinkType";
    case ErrorKind::AsymmetricPath: return "AsymmetricPath";
    case ErrorKind::ContradictoryConstraint: return "ContradictoryConstraint";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::SelfPair: return "SelfPair";
    case ErrorKind::TooFewObjects: return "TooFewObjects";
    case ErrorKind::PartialLabeling: return "PartialLabeling";
    case ErrorKind::SingleCluster: return "SingleCluster";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ObjectSetMismatch: return "ObjectSetMismatch";
    case ErrorKind::CountOverflow: return "CountOverflow";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::InfeasibleWeights: return "InfeasibleWeights";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Error";
}

}  // namespace schain
