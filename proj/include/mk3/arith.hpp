#pragma once

// Exact integers and rationals (GMP) plus the handful of elementary
// number-theoretic helpers shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mk3 {

using Int = mpz_class;
using Rat = mpq_class;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Int& x);
std::string to_string(const Rat& x);

/// Accepts "p", "-p", "p/q". Throws Error{Validation} on malformed input.
Rat parse_rational(const std::string& text);

Rat make_rat(const Int& num, const Int& den = 1);

inline bool is_integral(const Rat& x) { return x.get_den() == 1; }

int sign(const Int& x);
int sign(const Rat& x);

Int abs(const Int& x);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int pow(const Int& base, unsigned long exponent);

/// p-adic valuation of a nonzero integer.
int valuation(const Int& n, const Int& p);
int valuation(const Rat& x, const Int& p);

bool is_probable_prime(const Int& n);

/// Prime factorization of |n| (n != 0), primes increasing.
std::vector<std::pair<Int, int>> factor_integer(const Int& n);

/// Distinct primes dividing the numerator or denominator of x (x != 0).
std::vector<Int> prime_support(const Rat& x);

std::uint64_t to_u64(const Int& x);

}  // namespace mk3
