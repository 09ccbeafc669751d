#include <doctest.h>

#include <random>

#include "mk3/errors.hpp"
#include "mk3/ramification.hpp"
#include "mk3/recipes.hpp"
#include "oracles.hpp"

using namespace mk3;

namespace {

NumberField cubic() { return NumberField::define({-1, -3, 0, 1}); }

long random_nonzero(std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> d(-range, range);
  long x = 0;
  while (x == 0) x = d(rng);
  return x;
}

FieldElement random_integral(const NumberField& K, std::mt19937_64& rng, int range = 6) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<Rat> c;
  for (int i = 0; i < K.degree(); ++i) c.emplace_back(d(rng));
  return K.element(c);
}

const PlaceSymbol* find_dyadic(const RamificationReport& r) {
  for (const auto& s : r.symbols)
    if (!s.place.is_real() && s.place.prime.is_dyadic()) return &s;
  return nullptr;
}

}  // namespace

TEST_CASE("Hilbert symbols over Q agree with the classical formulas") {
  NumberField Q = NumberField::rationals();
  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    Rat a(random_nonzero(rng, 60), random_nonzero(rng, 4) > 0 ? 1 : 3);
    Rat b(random_nonzero(rng, 60), 1);
    a.canonicalize();
    auto A = Q.from_rational(a), B = Q.from_rational(b);
    CHECK(hilbert_real(A, B, 1) == oracle::hilbert_r(a, b));
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
      auto P = Q.factor_prime(Int(p)).front();
      CHECK(hilbert_odd(A, B, P) == oracle::hilbert_qp(a, b, p));
    }
    auto r = ramification_set(A, B);
    const auto* dy = find_dyadic(r);
    REQUIRE(dy != nullptr);
    CHECK(dy->inferred);
    CHECK(dy->symbol == oracle::hilbert_q2(a, b));
    CHECK(r.ramified_count() % 2 == 0);
  }
}

TEST_CASE("rational pairs over the cubic field: symbol is the Q_p symbol to the local degree") {
  NumberField K = cubic();
  std::mt19937_64 rng(29);
  for (int it = 0; it < 150; ++it) {
    Rat a(random_nonzero(rng, 40)), b(random_nonzero(rng, 40));
    auto A = K.from_rational(a), B = K.from_rational(b);
    for (int v = 1; v <= 3; ++v) CHECK(hilbert_real(A, B, v) == oracle::hilbert_r(a, b));
    for (long p : {3L, 5L, 7L, 17L, 19L}) {
      for (const auto& P : K.factor_prime(Int(p))) {
        int expected = oracle::hilbert_qp(a, b, p);
        if ((P.e * P.f) % 2 == 0) expected = 1;
        CHECK(hilbert_odd(A, B, P) == expected);
      }
    }
    // 2 is inert with local degree 3, so the inferred dyadic symbol is the Q_2 symbol
    auto r = ramification_set(A, B);
    const auto* dy = find_dyadic(r);
    REQUIRE(dy != nullptr);
    CHECK(dy->inferred);
    CHECK(dy->symbol == oracle::hilbert_q2(a, b));
  }
}

TEST_CASE("symbol identities at odd primes of the cubic field") {
  NumberField K = cubic();
  std::mt19937_64 rng(41);
  std::vector<PrimeIdeal> primes;
  for (long p : {3L, 5L, 17L, 19L})
    for (auto& P : K.factor_prime(Int(p))) primes.push_back(P);
  for (int it = 0; it < 60; ++it) {
    auto a = random_integral(K, rng), a2 = random_integral(K, rng), b = random_integral(K, rng);
    if (a.is_zero() || a2.is_zero() || b.is_zero()) continue;
    for (const auto& P : primes) {
      CHECK(hilbert_odd(a, b, P) == hilbert_odd(b, a, P));
      CHECK(hilbert_odd(a * a2, b, P) == hilbert_odd(a, b, P) * hilbert_odd(a2, b, P));
      CHECK(hilbert_odd(a, -a, P) == 1);
      CHECK(hilbert_odd(a, a * a, P) == 1);
      auto one_minus = K.one() - a;
      if (!one_minus.is_zero()) CHECK(hilbert_odd(a, one_minus, P) == 1);
    }
    for (int v = 1; v <= 3; ++v) CHECK(hilbert_real(a, -a, v) == 1);
  }
  auto P2 = K.factor_prime(Int(2)).front();
  CHECK_THROWS_AS(hilbert_odd(K.theta(), K.one(), P2), Error);
}

TEST_CASE("place symbols: parallel and serial agree") {
  NumberField K = cubic();
  std::mt19937_64 rng(2);
  for (int it = 0; it < 20; ++it) {
    auto a = random_integral(K, rng, 20), b = random_integral(K, rng, 20);
    if (a.is_zero() || b.is_zero()) continue;
    auto places = relevant_places(a, b);
    auto s = place_symbols_serial(a, b, places);
    auto p = place_symbols(a, b, places);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].symbol == p[i].symbol);
      CHECK(s[i].known == p[i].known);
      CHECK(s[i].place.to_string() == p[i].place.to_string());
    }
  }
}

TEST_CASE("Hamilton quaternions ramify at infinity and 2") {
  NumberField Q = NumberField::rationals();
  auto r = ramification_set(Q.from_rational(-1), Q.from_rational(-1));
  CHECK(r.ramified_real == std::vector<int>{1});
  REQUIRE(r.ramified_finite.size() == 1);
  CHECK(r.ramified_finite[0].p == 2);
  CHECK(r.resolution == Resolution::ByProductFormula);
  CHECK(r.disc_ideal == Ideal::principal(Q.from_rational(2)));

  auto split = ramification_set(Q.from_rational(1), Q.from_rational(5));
  CHECK(split.ramified_count() == 0);
  CHECK(split.disc_ideal == Ideal::unit(Q));
}

TEST_CASE("running example algebra") {
  RunningExample ex = running_example();
  auto r = ramification_set(ex.B);
  CHECK(r.ramified_real == std::vector<int>{1, 2});
  CHECK(r.ramified_finite.empty());
  CHECK(r.disc_ideal == Ideal::unit(ex.K));
  CHECK(r.resolution == Resolution::ByProductFormula);
  auto cert = is_mumford_admissible(ex.B);
  CHECK(cert.admissible);
  CHECK(cert.cubic);
  CHECK(cert.ramified_real == 2);
  CHECK(cert.reasons.empty());

  // the real embeddings of b are the roots of x^3 - 3x - 1; (-3, b) is -1 exactly where b < 0
  auto roots = oracle::cubic_roots();
  for (int v = 1; v <= 3; ++v) CHECK((hilbert_real(ex.B.a(), ex.B.b(), v) == -1) == (roots[static_cast<std::size_t>(v - 1)] < 0));
}

TEST_CASE("admissibility failures") {
  NumberField K = cubic();
  // (-1, -1) over a totally real cubic ramifies at all three real places
  QuaternionAlgebra H(K.from_rational(-1), K.from_rational(-1));
  auto cert = is_mumford_admissible(H);
  CHECK_FALSE(cert.admissible);
  CHECK(cert.ramified_real == 3);
  CHECK_FALSE(cert.reasons.empty());

  NumberField Q = NumberField::rationals();
  auto qc = is_mumford_admissible(QuaternionAlgebra(Q.from_rational(-1), Q.from_rational(-1)));
  CHECK_FALSE(qc.admissible);
  CHECK_FALSE(qc.cubic);
}

TEST_CASE("two dyadic places cannot be resolved") {
  // x^2 - x - 4 has discriminant 17; 2 splits
  NumberField K = NumberField::define({-4, -1, 1});
  REQUIRE(K.factor_prime(Int(2)).size() == 2);
  CHECK_THROWS_AS(ramification_set(K.from_rational(-1), K.from_rational(-1)), DyadicAmbiguityError);
  try {
    ramification_set(K.from_rational(-1), K.from_rational(-1));
  } catch (const DyadicAmbiguityError& e) {
    CHECK(e.kind() == ErrorKind::DyadicAmbiguity);
    CHECK(e.partial().ramified_real == std::vector<int>{1, 2});
  }
}

TEST_CASE("deduction from the allowed primes") {
  NumberField K = cubic();
  // the field is cyclic of conductor 9: 3 is totally ramified and a
  // rational prime p != 3 splits completely iff p = +-1 mod 9, else is inert
  auto r = quaternion_from_ram_deduction(K, {Int(2), Int(3)});
  REQUIRE(r.primes.size() == 2);
  for (const auto& pd : r.primes) {
    CHECK(pd.primes.size() == 1);
    CHECK(pd.forced_unramified);
  }
  CHECK(r.primes[0].primes[0].f == 3);
  CHECK(r.primes[1].primes[0].e == 3);
  CHECK(r.finite_ramified.empty());
  CHECK(r.real_ramified == 2);
  CHECK(r.conclusion == "no finite ramification; ramified only at two infinite places");

  auto five = quaternion_from_ram_deduction(K, {Int(5)});
  CHECK(five.primes[0].primes.size() == 1);
  CHECK(five.primes[0].forced_unramified);

  CHECK_THROWS_AS(quaternion_from_ram_deduction(K, {Int(17)}), UnderdeterminedError);
  try {
    quaternion_from_ram_deduction(K, {Int(2), Int(19)});
  } catch (const UnderdeterminedError& e) {
    CHECK(e.partial().primes.size() == 2);
    CHECK(e.partial().primes[1].primes.size() == 3);
  }
  CHECK_THROWS_AS(quaternion_from_ram_deduction(NumberField::rationals(), {Int(2)}), Error);
}
