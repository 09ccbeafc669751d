#include <doctest.h>

#include <random>

#include "mk3/errors.hpp"
#include "mk3/matrix.hpp"
#include "mk3/poly.hpp"

using namespace mk3;

namespace {

// cofactor expansion, exponential but independent of Bareiss
Int det_laplace(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    IntMatrix minor(n - 1, n - 1, Int(0));
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != c) minor(i - 1, k++) = m(i, j);
    Int t = m(0, c) * det_laplace(minor);
    s += (c % 2 ? -t : t);
  }
  return s;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  IntMatrix m(r, c, Int(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), mult(-2, 2);
  for (int step = 0; step < 12; ++step) {
    std::size_t a = static_cast<std::size_t>(pick(rng)), b = static_cast<std::size_t>(pick(rng));
    if (a == b) continue;
    int k = mult(rng);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += k * u(b, j);
  }
  return u;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-7")) == "-7");
  CHECK(to_string(make_rat(10, -4)) == "-5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("valuations and factoring") {
  CHECK(valuation(Int(4251528), Int(2)) == 3);
  CHECK(valuation(Int(4251528), Int(3)) == 12);
  CHECK(valuation(make_rat(5, 24), Int(2)) == -3);
  auto f = factor_integer(Int(-114791256));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::make_pair(Int(2), 3));
  CHECK(f[1] == std::make_pair(Int(3), 15));
  // a semiprime beyond trial division
  auto g = factor_integer(Int(1000003) * Int(998244353));
  REQUIRE(g.size() == 2);
  CHECK(g[0].first == 1000003);
  CHECK(g[1].first == 998244353);
  CHECK(prime_support(make_rat(-12, 35)) == std::vector<Int>{2, 3, 5, 7});
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + static_cast<std::size_t>(t % 6);
    IntMatrix m = random_matrix(rng, n, n, 9);
    CHECK(det(m) == det_laplace(m));
    CHECK(det(to_rational(m)) == Rat(det_laplace(m)));
  }
}

TEST_CASE("inverse") {
  IntMatrix a{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  RatMatrix inv = inverse(to_rational(a));
  CHECK(inv * to_rational(a) == RatMatrix::identity(3));
  CHECK(inv(0, 0) == make_rat(3, 4));
  CHECK_THROWS_AS(inverse(RatMatrix{{1, 2}, {2, 4}}), Error);
}

TEST_CASE("Hermite normal form spans the same lattice") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 25; ++t) {
    IntMatrix m = random_matrix(rng, 5, 3, 6);
    IntMatrix h = hnf_rows(m);
    // each original row is an integer combination of the HNF rows and vice versa
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::vector<Int> row(m.cols());
      for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m(i, j);
      CHECK(solve_hnf(h, row).has_value());
    }
    CHECK(hnf_rows(h) == h);
    for (std::size_t i = 0; i < h.rows(); ++i) {
      std::size_t piv = 0;
      while (piv < h.cols() && h(i, piv) == 0) ++piv;
      REQUIRE(piv < h.cols());
      CHECK(h(i, piv) > 0);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h(k, piv) >= 0);
        CHECK(h(k, piv) < h(i, piv));
      }
    }
  }
}

TEST_CASE("integer left kernel") {
  IntMatrix m{{1, 2}, {2, 4}, {3, 7}};
  IntMatrix k = integer_left_kernel(m);
  REQUIRE(k.rows() == 1);
  IntMatrix prod = k * m;
  CHECK(prod(0, 0) == 0);
  CHECK(prod(0, 1) == 0);
  // primitive (saturated): gcd of entries is 1
  Int g = 0;
  for (std::size_t j = 0; j < k.cols(); ++j) g = gcd(g, k(0, j));
  CHECK(g == 1);
}

TEST_CASE("Smith normal form") {
  SUBCASE("diag(2, 4)") {
    SmithForm s = smith_normal_form(IntMatrix{{2, 0}, {0, 4}});
    CHECK(s.diagonal(0, 0) == 2);
    CHECK(s.diagonal(1, 1) == 4);
  }
  SUBCASE("random matrices: U A V = D, divisibility, |det| preserved") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t) {
      IntMatrix a = random_matrix(rng, 4, 4, 8);
      SmithForm s = smith_normal_form(a);
      CHECK(s.left * a * s.right == s.diagonal);
      CHECK(abs(det(s.left)) == 1);
      CHECK(abs(det(s.right)) == 1);
      Int prod = 1;
      for (std::size_t i = 0; i < 4; ++i) {
        prod *= s.diagonal(i, i);
        CHECK(s.diagonal(i, i) >= 0);
        if (i + 1 < 4 && s.diagonal(i, i) != 0) CHECK(s.diagonal(i + 1, i + 1) % s.diagonal(i, i) == 0);
      }
      CHECK(prod == abs(det(a)));
    }
  }
}

TEST_CASE("inertia") {
  CHECK(inertia(IntMatrix{{0, 1}, {1, 0}}).positive == 1);
  CHECK(inertia(IntMatrix{{0, 1}, {1, 0}}).negative == 1);
  Inertia z = inertia(IntMatrix{{1, 1}, {1, 1}});
  CHECK(z.positive == 1);
  CHECK(z.zero == 1);
  SUBCASE("invariant under unimodular congruence") {
    std::mt19937_64 rng(3);
    IntMatrix g{{-2, 1, 0, 0}, {1, -2, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    for (int t = 0; t < 20; ++t) {
      IntMatrix u = random_unimodular(rng, 4);
      Inertia s = inertia(u * g * u.transpose());
      CHECK(s.positive == 1);
      CHECK(s.negative == 3);
      CHECK(s.zero == 0);
    }
  }
}

TEST_CASE("polynomials") {
  RatPoly f = parse_poly("x^3-3x-1");
  CHECK(f == RatPoly{-1, -3, 0, 1});
  CHECK(format_poly(f, "x") == "x^3 - 3*x - 1");
  CHECK(parse_poly("t^2 + 1/2") == RatPoly{make_rat(1, 2), 0, 1});
  auto [q, r] = divmod(RatPoly{1, 0, 0, 1}, RatPoly{1, 1});  // x^3+1 = (x+1)(x^2-x+1)
  CHECK(q == RatPoly{1, -1, 1});
  CHECK(r.empty());
  auto chain = sturm_chain(f);
  CHECK(count_roots(chain, -2, 2) == 3);
  CHECK(count_roots(chain, 0, 2) == 1);
}

TEST_CASE("factorization over F_p") {
  // x^3 - 3x - 1 mod 3 = (x - 1)^3
  auto f3 = factor(FpPoly::reduce(3, RatPoly{-1, -3, 0, 1}));
  REQUIRE(f3.size() == 1);
  CHECK(f3[0].second == 3);
  CHECK(f3[0].first == FpPoly(3, {2, 1}));
  // x^4 - 1 mod 5 splits completely
  auto f5 = factor(FpPoly::reduce(5, RatPoly{-1, 0, 0, 0, 1}));
  CHECK(f5.size() == 4);
  // products recover the input, over a range of primes and polynomials
  std::mt19937_64 rng(19);
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 13u, 101u}) {
    for (int t = 0; t < 10; ++t) {
      std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
      std::vector<std::uint64_t> c(6);
      for (auto& x : c) x = dist(rng);
      c.back() = 1;
      FpPoly g(p, c);
      FpPoly prod = FpPoly::constant(p, 1);
      for (const auto& [h, e] : factor(g)) {
        CHECK(h.lead() == 1);
        for (int k = 0; k < e; ++k) prod = prod * h;
      }
      CHECK(prod == g);
    }
  }
}
