#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mk3 {

enum class ErrorKind {
  NotMonic,
  NotIrreducible,
  NotTotallyReal,
  ZeroElement,
  DyadicPrime,
  NonUnit,
  FieldMismatch,
  AlgebraMismatch,
  NotAnOrder,
  NoFreeBasis,
  DyadicAmbiguity,
  Underdetermined,
  NotQuadraticOverK,
  NonIntegralGram,
  MismatchDetected,
  OddLattice,
  Degenerate,
  UnknownSymbol,
  CapExceeded,
  NotIsotropic,
  BadSignature,
  UnsupportedGroup,
  Validation,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mk3
