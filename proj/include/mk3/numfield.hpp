#pragma once

// Monogenic totally real number fields K = Q[x]/(f): exact element
// arithmetic in the power basis, real embeddings via isolating intervals,
// trace and norm, splitting of rational primes, residue-field squares, and
// integral ideals stored as Z-modules in Hermite normal form.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mk3/arith.hpp"
#include "mk3/matrix.hpp"
#include "mk3/poly.hpp"

namespace mk3 {

class FieldElement;

/// A prime of K above p, described by the Kummer-Dedekind data
/// (p, g) with g an irreducible factor of f mod p of multiplicity e.
struct PrimeIdeal {
  Int p;
  FpPoly g;
  int e = 1;  // ramification index
  int f = 1;  // residue degree
  /// u with f = g^e * (f/g^e) mod p lifted so that u(theta)/p generates
  /// P^{-1} modulo O_K (an anti-uniformizer at P, integral elsewhere).
  RatPoly anti_uniformizer_num;

  bool is_dyadic() const { return p == 2; }
  std::string to_string() const;  // e.g. "(3, t + 2)"
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) { return a.p == b.p && a.g == b.g; }
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
    if (a.p != b.p) return a.p < b.p;
    return a.g < b.g;
  }
};

class NumberField {
 public:
  NumberField() = default;

  /// coeffs: c_0, ..., c_{d-1}, 1 (constant term first).
  /// Throws NotMonic, NotIrreducible, NotTotallyReal; and Validation when
  /// claimed_disc is given and differs from disc(f).
  static NumberField define(const std::vector<Int>& coeffs, std::optional<Int> claimed_disc = std::nullopt);
  static NumberField rationals();

  int degree() const;
  const RatPoly& min_poly() const;
  const Int& disc() const;
  /// Isolating intervals for the real roots, ordered increasingly.
  const std::vector<Interval>& root_intervals() const;
  std::string name() const;  // "x^3 - 3*x - 1"

  FieldElement element(std::vector<Rat> coeffs) const;
  FieldElement from_rational(const Rat& r) const;
  FieldElement from_poly(const RatPoly& poly) const;
  FieldElement zero() const;
  FieldElement one() const;
  FieldElement theta() const;

  /// Primes above p with their (e, f) data; Sum e*f = d is asserted.
  std::vector<PrimeIdeal> factor_prime(const Int& p) const;

  bool valid() const noexcept { return static_cast<bool>(data_); }
  friend bool operator==(const NumberField& a, const NumberField& b);
  friend bool operator!=(const NumberField& a, const NumberField& b) { return !(a == b); }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(NumberField field, std::vector<Rat> coeffs);

  const NumberField& field() const noexcept { return field_; }
  const std::vector<Rat>& coeffs() const noexcept { return c_; }
  const Rat& operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const;
  bool is_rational() const;
  /// Membership in O_K = Z[theta].
  bool is_integral() const;
  /// lcm of coefficient denominators.
  Int denominator() const;

  FieldElement operator-() const;
  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const Rat& r, const FieldElement& a);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
  FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
  FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }
  FieldElement pow(unsigned n) const;
  FieldElement inverse() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

  /// Polynomial in the generator, e.g. "2*t^2 - 8".
  std::string to_string(const std::string& var = "t") const;

 private:
  NumberField field_;
  std::vector<Rat> c_;
};

/// Rows: coordinates of x * theta^i.
RatMatrix multiplication_matrix(const FieldElement& x);
Rat trace(const FieldElement& x);
Rat norm(const FieldElement& x);
/// Gram matrix [Tr(theta^(i+j))] of the trace form on the power basis.
RatMatrix trace_form_gram(const NumberField& K);
/// (-1)^(d(d-1)/2) Res(f, f'), computed from the Sylvester matrix.
Int poly_discriminant(const RatPoly& monic_f);

/// Exact sign of sigma_place(x), place in 1..d. Throws ZeroElement.
int sign_at(const FieldElement& x, int place);
/// Enclosure of sigma_place(x) after `bisections` refinements of the root.
Interval embed(const FieldElement& x, int place, int bisections);

/// P-adic valuation of a nonzero element.
int valuation(const FieldElement& x, const PrimeIdeal& P);
/// Image of a P-unit in F_p[t]/(g). Throws NonUnit.
FpPoly residue(const FieldElement& x, const PrimeIdeal& P);
/// Euler criterion in F_{p^f}. Throws DyadicPrime (p = 2) or NonUnit.
bool is_square_in_residue_field(const FieldElement& x, const PrimeIdeal& P);

/// Integral ideal of O_K = Z[theta], stored by the row HNF of a Z-basis.
class Ideal {
 public:
  Ideal() = default;
  static Ideal unit(const NumberField& K);
  /// x must be integral and nonzero.
  static Ideal principal(const FieldElement& x);
  static Ideal of_prime(const NumberField& K, const PrimeIdeal& P);

  const NumberField& field() const noexcept { return field_; }
  const IntMatrix& hnf() const noexcept { return hnf_; }
  Int norm() const;
  bool is_unit() const;
  bool contains(const FieldElement& x) const;
  Ideal pow(unsigned n) const;

  friend Ideal operator*(const Ideal& a, const Ideal& b);
  friend bool operator==(const Ideal& a, const Ideal& b) { return a.field_ == b.field_ && a.hnf_ == b.hnf_; }
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

  /// A generator found by short search (class number 1 fields), if any.
  std::optional<FieldElement> find_generator() const;
  /// "(gen)" when a generator is found, otherwise the HNF rows.
  std::string to_string(const std::string& var = "t") const;

 private:
  Ideal(NumberField K, IntMatrix hnf) : field_(std::move(K)), hnf_(std::move(hnf)) {}
  static Ideal from_generators(const NumberField& K, const std::vector<FieldElement>& gens);
  NumberField field_;
  IntMatrix hnf_;
};

}  // namespace mk3
