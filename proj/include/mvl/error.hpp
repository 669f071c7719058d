#pragma once

#include <stdexcept>
#include <string>

namespace mvl {

enum class ErrorKind {
  EmptyBases,
  MixedCardinality,
  ExchangeViolation,
  InconsistentZ,
  FullDeletion,
  CapExceeded,
  UnsupportedField,
  NotAGroup,
  ChainExplosion,
  MalformedChain,
  RankSizeMismatch,
  BadParameter,
  EmptyCatalog,
  DimensionMismatch,
  InvalidCut,
  Timeout,
  ParseError,
  Internal,
};

inline const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptyBases: return "EmptyBases";
    case ErrorKind::MixedCardinality: return "MixedCardinality";
    case ErrorKind::ExchangeViolation: return "ExchangeViolation";
    case ErrorKind::InconsistentZ: return "InconsistentZ";
    case ErrorKind::FullDeletion: return "FullDeletion";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::ChainExplosion: return "ChainExplosion";
    case ErrorKind::MalformedChain: return "MalformedChain";
    case ErrorKind::RankSizeMismatch: return "RankSizeMismatch";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::EmptyCatalog: return "EmptyCatalog";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidCut: return "InvalidCut";
    case ErrorKind::Timeout: return "Timeout";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// Domain error. what() carries the detail; kind() names the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  const char* name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
  throw Error(kind, detail);
}

}  // namespace mvl
