#pragma once

// Univariate polynomials, coefficients stored constant term first.
// RatPoly: exact rational arithmetic plus Sturm sequences for real-root work.
// FpPoly: arithmetic and factorization over a prime field F_p, p < 2^62.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mk3/arith.hpp"

namespace mk3 {

using RatPoly = std::vector<Rat>;

void normalize(RatPoly& f);
int degree(const RatPoly& f);  // -1 for the zero polynomial
Rat evaluate(const RatPoly& f, const Rat& x);
RatPoly operator+(const RatPoly& f, const RatPoly& g);
RatPoly operator-(const RatPoly& f, const RatPoly& g);
RatPoly operator*(const RatPoly& f, const RatPoly& g);
/// Quotient and remainder; g must be nonzero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& f, const RatPoly& g);
RatPoly derivative(const RatPoly& f);

/// Renders with the given variable name, e.g. "x^3 - 3*x - 1".
std::string format_poly(const RatPoly& f, const std::string& var);

/// Parses "x^3-3x-1", "x^3 - 3*x - 1", "t^2+1/2" etc. (single variable).
RatPoly parse_poly(const std::string& text);

/// Sturm chain f, f', -rem(...), ...
std::vector<RatPoly> sturm_chain(const RatPoly& f);
/// Number of sign variations of the chain evaluated at x.
int sign_variations(const std::vector<RatPoly>& chain, const Rat& x);
/// Number of distinct real roots in the half-open interval (lo, hi].
int count_roots(const std::vector<RatPoly>& chain, const Rat& lo, const Rat& hi);

struct Interval {
  Rat lo;
  Rat hi;
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  Rat width() const { return hi - lo; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Horner evaluation in interval arithmetic; encloses f(I).
Interval evaluate(const RatPoly& f, const Interval& x);

// ---------------------------------------------------------------------------

class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  static FpPoly constant(std::uint64_t p, std::uint64_t c);
  static FpPoly x(std::uint64_t p);
  /// Reduces an integer-coefficient polynomial mod p (throws if a
  /// denominator is divisible by p).
  static FpPoly reduce(std::uint64_t p, const RatPoly& f);

  std::uint64_t prime() const noexcept { return p_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
  const std::vector<std::uint64_t>& coeffs() const noexcept { return c_; }
  std::uint64_t lead() const { return c_.back(); }
  std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  FpPoly monic() const;
  FpPoly derivative() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
  friend bool operator<(const FpPoly& a, const FpPoly& b);

  std::pair<FpPoly, FpPoly> divmod(const FpPoly& g) const;
  FpPoly operator%(const FpPoly& g) const { return divmod(g).second; }
  FpPoly operator/(const FpPoly& g) const { return divmod(g).first; }

  /// Lifts coefficients to integers in [0, p).
  RatPoly lift() const;
  std::string to_string(const std::string& var) const;

 private:
  void trim();
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

FpPoly gcd(const FpPoly& a, const FpPoly& b);
/// Inverse of a modulo m (gcd must be 1).
FpPoly invmod(const FpPoly& a, const FpPoly& m);
FpPoly powmod(const FpPoly& base, const Int& exponent, const FpPoly& m);

/// Monic irreducible factors with multiplicity, sorted by (degree, coeffs).
/// f must be nonzero; the leading coefficient is discarded.
std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f);

}  // namespace mk3
