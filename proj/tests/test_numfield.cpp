#include <doctest.h>

#include <random>
#include <set>

#include "mk3/errors.hpp"
#include "mk3/numfield.hpp"
#include "oracles.hpp"

using namespace mk3;

namespace {

NumberField cubic() { return NumberField::define({-1, -3, 0, 1}); }

FieldElement random_element(const NumberField& K, std::mt19937_64& rng, int range = 6, int den = 3) {
  std::vector<Rat> c;
  for (int i = 0; i < K.degree(); ++i) c.push_back(oracle::random_rat(rng, range, den));
  return K.element(c);
}

}  // namespace

TEST_CASE("define_field") {
  NumberField K = cubic();
  CHECK(K.degree() == 3);
  // -4p^3 - 27q^2 with p = -3, q = -1
  CHECK(K.disc() == -4 * (-27) - 27 * 1);
  CHECK(NumberField::rationals().degree() == 1);
  CHECK(NumberField::rationals().disc() == 1);
  CHECK(NumberField::define({-2, 0, 1}).disc() == 8);
  CHECK(NumberField::define({-1, -3, 0, 1}, Int(81)).disc() == 81);
}

TEST_CASE("define_field rejects bad input") {
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Validation;
  };
  CHECK(kind([] { NumberField::define({1, 0, 2}); }) == ErrorKind::NotMonic);
  CHECK(kind([] { NumberField::define({-1, 0, 1}); }) == ErrorKind::NotIrreducible);     // (x-1)(x+1)
  CHECK(kind([] { NumberField::define({-2, 1, -2, 1}); }) == ErrorKind::NotIrreducible); // (x-2)(x^2+1)
  // (x^2+1)(x^2+4): no real roots, rejected before a factor search is possible
  CHECK(kind([] { NumberField::define({4, 0, 5, 0, 1}); }) == ErrorKind::NotTotallyReal);
  CHECK(kind([] { NumberField::define({1, 0, 1}); }) == ErrorKind::NotTotallyReal);
  CHECK(kind([] { NumberField::define({-2, 0, 0, 1}); }) == ErrorKind::NotTotallyReal);
  CHECK_THROWS_AS(NumberField::define({-1, -3, 0, 1}, Int(80)), Error);
}

TEST_CASE("irreducible quartic with no rational roots but reducible shape is detected") {
  // x^4 - 10x^2 + 1 is irreducible over Q yet reducible mod every prime
  CHECK_NOTHROW(NumberField::define({1, 0, -10, 0, 1}));
  CHECK_NOTHROW(NumberField::define({1, 0, -4, 0, 1}));
  // x^4 - 6x^2 + 1 = (x^2 - 2x - 1)(x^2 + 2x - 1)
  CHECK_THROWS_AS(NumberField::define({1, 0, -6, 0, 1}), Error);
  // (x^2 - 2)(x^2 - 3)(x^2 - 5)
  CHECK_THROWS_AS(NumberField::define({-30, 0, 31, 0, -10, 0, 1}), Error);
}

TEST_CASE("trace and norm") {
  NumberField K = cubic();
  CHECK(trace(K.theta()) == 0);
  CHECK(norm(K.theta()) == 1);
  CHECK(trace(K.theta().pow(2)) == 6);
  CHECK(trace_form_gram(K) == RatMatrix{{3, 0, 6}, {0, 6, 3}, {6, 3, 18}});
  CHECK(det(trace_form_gram(K)) == 81);
}

TEST_CASE("trace against Newton power sums, norm against numeric roots") {
  for (auto coeffs : {std::vector<Int>{-1, -3, 0, 1}, std::vector<Int>{-2, 0, 1}, std::vector<Int>{-1, 1}}) {
    NumberField K = NumberField::define(coeffs);
    std::vector<Rat> f;
    for (auto& c : coeffs) f.emplace_back(c);
    auto p = oracle::power_sums(f, K.degree());
    std::vector<long double> roots;
    if (K.degree() == 3) roots = oracle::cubic_roots();
    if (K.degree() == 2) roots = {-std::sqrt(2.0L), std::sqrt(2.0L)};
    if (K.degree() == 1) roots = {1.0L};
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 30; ++t) {
      FieldElement x = random_element(K, rng);
      Rat tr = 0;
      for (int i = 0; i < K.degree(); ++i) tr += x[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(i)];
      CHECK(trace(x) == tr);
      long double nm = 1;
      for (auto r : roots) nm *= oracle::eval_at(x.coeffs(), r);
      CHECK(std::fabs(static_cast<long double>(norm(x).get_d()) - nm) < 1e-9L * (1 + std::fabs(nm)));
    }
  }
}

TEST_CASE("trace additive, norm multiplicative") {
  for (auto coeffs : {std::vector<Int>{-1, -3, 0, 1}, std::vector<Int>{-2, 0, 1}}) {
    NumberField K = NumberField::define(coeffs);
    std::mt19937_64 rng(99);
    for (int t = 0; t < 50; ++t) {
      FieldElement x = random_element(K, rng), y = random_element(K, rng);
      CHECK(trace(x + y) == trace(x) + trace(y));
      CHECK(norm(x * y) == norm(x) * norm(y));
      if (!x.is_zero()) CHECK(x * x.inverse() == K.one());
    }
  }
}

TEST_CASE("discriminant: Sylvester route equals the trace-form determinant") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dist(-9, 9);
  int tested = 0;
  for (int t = 0; t < 200 && tested < 25; ++t) {
    std::vector<Int> c = {dist(rng), dist(rng), dist(rng), 1};
    try {
      NumberField K = NumberField::define(c);
      CHECK(Rat(K.disc()) == det(trace_form_gram(K)));
      // cubic x^3 + a x^2 + b x + c discriminant formula
      Int a = c[2], b = c[1], cc = c[0];
      CHECK(K.disc() == a * a * b * b - 4 * b * b * b - 4 * a * a * a * cc - 27 * cc * cc + 18 * a * b * cc);
      ++tested;
    } catch (const Error&) {
    }
  }
  CHECK(tested >= 10);
}

TEST_CASE("embeddings") {
  NumberField K = cubic();
  auto roots = oracle::cubic_roots();
  for (int i = 1; i <= 3; ++i) {
    Interval iv = embed(K.theta(), i, 30);
    CHECK(iv.lo.get_d() <= static_cast<double>(roots[static_cast<std::size_t>(i - 1)]) + 1e-12);
    CHECK(iv.hi.get_d() >= static_cast<double>(roots[static_cast<std::size_t>(i - 1)]) - 1e-12);
  }
  CHECK(sign_at(K.theta(), 1) == -1);
  CHECK(sign_at(K.theta(), 2) == -1);
  CHECK(sign_at(K.theta(), 3) == 1);
  for (int i = 1; i <= 3; ++i) {
    CHECK(sign_at(K.one(), i) == 1);
    CHECK(sign_at(K.from_rational(-3), i) == -1);
  }
  CHECK_THROWS_AS(sign_at(K.zero(), 1), Error);

  SUBCASE("signs of random elements match the numeric roots") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 40; ++t) {
      FieldElement x = random_element(K, rng);
      if (x.is_zero()) continue;
      for (int i = 1; i <= 3; ++i) {
        long double v = oracle::eval_at(x.coeffs(), roots[static_cast<std::size_t>(i - 1)]);
        if (std::fabs(v) > 1e-9L) CHECK(sign_at(x, i) == (v > 0 ? 1 : -1));
      }
    }
  }
  SUBCASE("trace lies in the sum of enclosures") {
    std::mt19937_64 rng(81);
    for (int depth : {0, 5, 20}) {
      FieldElement x = random_element(K, rng);
      Interval sum{0, 0};
      for (int i = 1; i <= 3; ++i) sum = sum + embed(x, i, depth);
      CHECK(sum.contains(trace(x)));
    }
  }
}

TEST_CASE("factor_prime") {
  NumberField K = cubic();
  auto p2 = K.factor_prime(2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].e == 1);
  CHECK(p2[0].f == 3);
  auto p3 = K.factor_prime(3);
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].e == 3);
  CHECK(p3[0].f == 1);
  auto p5 = K.factor_prime(5);
  REQUIRE(p5.size() == 1);
  CHECK(p5[0].f == 3);
  // 17 = 2 cos(2 pi/9) splits since 17 = -1 mod 9
  auto p17 = K.factor_prime(17);
  CHECK(p17.size() == 3);
  for (long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 101}) {
    int s = 0;
    for (const auto& P : K.factor_prime(p)) s += P.e * P.f;
    CHECK(s == 3);
  }
  auto q = NumberField::define({-2, 0, 1}).factor_prime(7);  // 7 splits in Q(sqrt 2)
  CHECK(q.size() == 2);
}

TEST_CASE("valuations and residues") {
  NumberField K = cubic();
  auto P3 = K.factor_prime(3)[0];
  CHECK(valuation(K.from_rational(3), P3) == 3);
  // Nm(theta - 1) = -f(1) = 3, so theta - 1 generates the prime above 3
  CHECK(norm(K.theta() - K.one()) == 3);
  CHECK(valuation(K.theta() - K.one(), P3) == 1);
  CHECK(valuation(K.theta() + K.one(), P3) == 0);
  CHECK(valuation(K.from_rational(make_rat(1, 9)), P3) == -6);
  auto P2 = K.factor_prime(2)[0];
  CHECK(valuation(K.from_rational(make_rat(3, 8)), P2) == -3);
  CHECK_THROWS_AS(residue(K.from_rational(3), P3), Error);
}

TEST_CASE("is_square_in_residue_field against brute force") {
  NumberField Q = NumberField::rationals();
  auto P5 = Q.factor_prime(5)[0];
  CHECK_FALSE(is_square_in_residue_field(Q.from_rational(2), P5));
  CHECK(is_square_in_residue_field(Q.from_rational(4), P5));
  CHECK(is_square_in_residue_field(Q.one(), P5));
  CHECK_THROWS_AS(is_square_in_residue_field(Q.one(), Q.factor_prime(2)[0]), Error);
  CHECK_THROWS_AS(is_square_in_residue_field(Q.from_rational(5), P5), Error);

  NumberField K = cubic();
  for (long p : {5, 7, 17}) {
    for (const auto& P : K.factor_prime(p)) {
      // squares of F_p[t]/(g), enumerated
      std::set<std::vector<std::uint64_t>> squares;
      const std::uint64_t q = static_cast<std::uint64_t>(p);
      std::vector<std::uint64_t> c(static_cast<std::size_t>(P.f), 0);
      while (true) {
        FpPoly x(q, c);
        FpPoly s = (x * x) % P.g;
        if (!x.is_zero()) squares.insert(s.coeffs());
        std::size_t k = 0;
        while (k < c.size() && ++c[k] == q) c[k++] = 0;
        if (k == c.size()) break;
      }
      std::mt19937_64 rng(static_cast<unsigned long>(p));
      for (int t = 0; t < 25; ++t) {
        FieldElement x = random_element(K, rng, 20, 1);
        if (x.is_zero() || valuation(x, P) != 0) continue;
        FpPoly r = FpPoly::reduce(q, x.coeffs()) % P.g;
        CHECK(is_square_in_residue_field(x, P) == (squares.count(r.coeffs()) > 0));
      }
    }
  }
}

TEST_CASE("ideals") {
  NumberField K = cubic();
  Ideal one = Ideal::unit(K);
  CHECK(one.is_unit());
  CHECK(one.norm() == 1);
  Ideal two = Ideal::principal(K.from_rational(2));
  CHECK(two.norm() == 8);
  CHECK(two == Ideal::of_prime(K, K.factor_prime(2)[0]));
  Ideal P3 = Ideal::of_prime(K, K.factor_prime(3)[0]);
  CHECK(P3.norm() == 3);
  CHECK(P3.pow(3) == Ideal::principal(K.from_rational(3)));
  CHECK(Ideal::principal(K.theta()).is_unit());
  CHECK(Ideal::principal(K.theta().pow(2) - K.from_rational(4)) == P3);  // norm -3
  auto g = P3.find_generator();
  REQUIRE(g.has_value());
  CHECK(Ideal::principal(*g) == P3);
  CHECK(P3.contains(K.from_rational(3)));
  CHECK_FALSE(P3.contains(K.one()));
}

TEST_CASE("prime splitting requires Z[theta] to be p-maximal") {
  // Z[sqrt 17] has index 2 in the ring of integers
  NumberField K = NumberField::define({-17, 0, 1});
  CHECK_THROWS_AS(K.factor_prime(Int(2)), Error);
  CHECK(K.factor_prime(Int(17)).size() == 1);
  // Z[(1 + sqrt 17)/2]: 2 splits
  CHECK(NumberField::define({-4, -1, 1}).factor_prime(Int(2)).size() == 2);
  // Z[sqrt 5] has index 2, Z[(1 + sqrt 5)/2] is maximal
  CHECK_THROWS_AS(NumberField::define({-5, 0, 1}).factor_prime(Int(2)), Error);
  CHECK(NumberField::define({-1, -1, 1}).factor_prime(Int(2)).size() == 1);
  // the cubic field is monogenic: 3 = P^3 passes the criterion
  CHECK(NumberField::define({-1, -3, 0, 1}).factor_prime(Int(3)).front().e == 3);
}
