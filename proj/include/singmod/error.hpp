#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singmod {

enum class ErrorCode {
  InvalidArgument,
  NotDiscriminant,
  NotPrime,
  HalfIntegerViolation,
  NotIntegerValued,
  NotPositiveDefinite,
  NegativeMinimum,
  DegenerateQuadraticPart,
  NotClosed,
  MissingUnit,
  RankDeficient,
  NonSquareDiscriminant,
  AuxiliaryPrimeNotFound,
  MaximalityCheckFailed,
  InvariantMismatch,
  PrecisionExhausted,
  UnsupportedPrime,
  CacheCorrupt,
  Overflow,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotDiscriminant: return "NotDiscriminant";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::HalfIntegerViolation: return "HalfIntegerViolation";
    case ErrorCode::NotIntegerValued: return "NotIntegerValued";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NegativeMinimum: return "NegativeMinimum";
    case ErrorCode::DegenerateQuadraticPart: return "DegenerateQuadraticPart";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::MissingUnit: return "MissingUnit";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonSquareDiscriminant: return "NonSquareDiscriminant";
    case ErrorCode::AuxiliaryPrimeNotFound: return "AuxiliaryPrimeNotFound";
    case ErrorCode::MaximalityCheckFailed: return "MaximalityCheckFailed";
    case ErrorCode::InvariantMismatch: return "InvariantMismatch";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a stable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace singmod
