#pragma once

// Local Hilbert symbols of (a, b) at real and odd finite places, the
// ramification set of a quaternion algebra with dyadic symbols inferred
// from the product formula, and the Mumford admissibility test.

#include <optional>
#include <string>
#include <vector>

#include "mk3/errors.hpp"
#include "mk3/numfield.hpp"
#include "mk3/quat.hpp"

namespace mk3 {

struct Place {
  enum class Kind { Real, Finite };
  Kind kind = Kind::Real;
  int real_index = 0;  // 1..d, increasing root order
  PrimeIdeal prime;    // valid for Kind::Finite

  static Place real(int index) { return Place{Kind::Real, index, {}}; }
  static Place finite(PrimeIdeal P) { return Place{Kind::Finite, 0, std::move(P)}; }
  bool is_real() const { return kind == Kind::Real; }
  std::string to_string() const;
};

int hilbert_real(const FieldElement& a, const FieldElement& b, int place);
/// Tame symbol at an odd prime. Throws DyadicPrime.
int hilbert_odd(const FieldElement& a, const FieldElement& b, const PrimeIdeal& P);

struct PlaceSymbol {
  Place place;
  int symbol = 1;         // +1 split, -1 ramified
  bool inferred = false;  // dyadic value deduced from the product formula
  bool known = true;
};

/// Symbols at the given places (dyadic places are left unknown).
/// The parallel variant distributes places across threads; both return
/// results in input order.
std::vector<PlaceSymbol> place_symbols(const FieldElement& a, const FieldElement& b, const std::vector<Place>& places);
std::vector<PlaceSymbol> place_symbols_serial(const FieldElement& a, const FieldElement& b,
                                              const std::vector<Place>& places);

/// Real places, then primes above 2 and every odd prime where a or b is
/// not a unit, in increasing order.
std::vector<Place> relevant_places(const FieldElement& a, const FieldElement& b);

enum class Resolution { Determined, ByProductFormula, Ambiguous };
std::string to_string(Resolution r);

struct RamificationReport {
  std::vector<int> ramified_real;
  std::vector<PrimeIdeal> ramified_finite;
  Ideal disc_ideal;
  Resolution resolution = Resolution::Determined;
  std::vector<PlaceSymbol> symbols;

  std::size_t ramified_count() const { return ramified_real.size() + ramified_finite.size(); }
};

class DyadicAmbiguityError : public Error {
 public:
  DyadicAmbiguityError(const std::string& what, RamificationReport partial)
      : Error(ErrorKind::DyadicAmbiguity, what), partial_(std::move(partial)) {}
  const RamificationReport& partial() const noexcept { return partial_; }

 private:
  RamificationReport partial_;
};

RamificationReport ramification_set(const FieldElement& a, const FieldElement& b);
RamificationReport ramification_set(const QuaternionAlgebra& B);

struct AdmissibilityCertificate {
  bool admissible = false;
  bool cubic = false;
  int ramified_real = 0;
  /// (p, number of ramified primes of K above p) for each p with some ramification.
  std::vector<std::pair<Int, int>> ramified_above;
  std::vector<std::string> reasons;  // failed conditions, empty when admissible
};

/// Cubic, exactly two of three real places ramified, and an even number of
/// ramified primes above every rational prime. Propagates DyadicAmbiguity.
AdmissibilityCertificate is_mumford_admissible(const QuaternionAlgebra& B);

struct PrimeDeduction {
  Int p;
  std::vector<PrimeIdeal> primes;
  bool forced_unramified = false;
};

struct DeductionReport {
  std::vector<PrimeDeduction> primes;
  std::vector<PrimeIdeal> finite_ramified;  // forced finite ramification
  int real_ramified = 2;                    // Mumford infinite ramification
  std::string conclusion;
};

class UnderdeterminedError : public Error {
 public:
  UnderdeterminedError(const std::string& what, DeductionReport partial)
      : Error(ErrorKind::Underdetermined, what), partial_(std::move(partial)) {}
  const DeductionReport& partial() const noexcept { return partial_; }

 private:
  DeductionReport partial_;
};

/// For a cubic field and the candidate rational primes of finite
/// ramification, applies the even-count rule: a rational prime with a
/// single prime of K above it cannot ramify. Throws Underdetermined when
/// some p has two or more primes above it.
DeductionReport quaternion_from_ram_deduction(const NumberField& K, const std::vector<Int>& allowed_primes);

}  // namespace mk3
