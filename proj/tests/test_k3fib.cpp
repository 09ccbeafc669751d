#include <doctest.h>

#include <functional>

#include "mk3/errors.hpp"
#include "mk3/k3fib.hpp"
#include "mk3/recipes.hpp"

using namespace mk3;

namespace {

IntLattice hyperbolic() { return IntLattice(IntMatrix{{Int(0), Int(1)}, {Int(1), Int(0)}}); }

IntLattice ade(const std::string& s, Sign sign = Sign::Negative) { return ade_lattice(ADEConfig::parse(s), sign); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Validation;
}

}  // namespace

TEST_CASE("running example: no fibration obstruction, trivial torsion by length") {
  RunningExample ex = running_example();
  auto ctx = K3Context::from_transcendental(IntLattice(ex.printed_gram));
  CHECK(ctx.picard_rank == 13);
  auto cert = fibration_exists(ctx);
  CHECK(cert.exists);
  CHECK(cert.lambda == 9);
  CHECK(cert.inequality == "13 >= 9 + 3");
  auto v = mw_torsion_verdict(ctx, Rank3Options{});
  CHECK(v.fibration);
  CHECK(v.lambda == 9);
  CHECK(v.torsion == std::vector<TorsionGroup>{TorsionGroup::Trivial});
  CHECK(v.configs.empty());
  CHECK(v.searches.empty());
}

TEST_CASE("U + U + D4(-) + A1(-): the negated form has a rank-3 model") {
  IntLattice T = direct_sum(direct_sum(direct_sum(hyperbolic(), hyperbolic()), ade("D4")), ade("A1"));
  auto ctx = K3Context::from_transcendental(T);
  CHECK(fibration_exists(ctx).lambda == 3);
  // -q_T takes the values 1/2 once, 1 three times, 3/2 three times: that of diag(-2,-2,-2)
  auto neg = negate(disc_form(T));
  CHECK(disc_forms_isomorphic(neg, disc_form(IntLattice(IntMatrix{{Int(-2), Int(0), Int(0)},
                                                                  {Int(0), Int(-2), Int(0)},
                                                                  {Int(0), Int(0), Int(-2)}})))
            .value());
  auto v = mw_torsion_verdict(ctx, Rank3Options{2, std::chrono::milliseconds(20000)});
  CHECK(v.lambda == 3);
  CHECK(v.torsion == std::vector<TorsionGroup>{TorsionGroup::Trivial, TorsionGroup::Z2});
  REQUIRE(v.configs.size() == 1);
  CHECK(v.configs[0].to_string() == "8A1");
  CHECK(v.searches.size() == 2);
}

TEST_CASE("two-torsion ADE candidates") {
  auto cands = two_torsion_candidates();
  REQUIRE(cands.size() == 3);
  CHECK(cands[0].config.to_string() == "8A1");
  CHECK(cands[1].config.to_string() == "9A1");
  CHECK(cands[2].config.to_string() == "A3+6A1");
  for (const auto& c : cands) {
    CHECK(c.group == TorsionGroup::Z2);
    CHECK(torsion_overlattice_check(c.config, TorsionGroup::Z2));
  }
  // on nA1(-) an order-2 isotropic vector needs four A1 summands
  CHECK_FALSE(torsion_overlattice_check(ADEConfig::parse("2A1"), TorsionGroup::Z2));
  CHECK_FALSE(torsion_overlattice_check(ADEConfig::parse("3A1"), TorsionGroup::Z2));
  CHECK(torsion_overlattice_check(ADEConfig::parse("4A1"), TorsionGroup::Z2));
  CHECK_FALSE(torsion_overlattice_check(ADEConfig::parse("A2"), TorsionGroup::Z2));
  CHECK(torsion_overlattice_check(ADEConfig::parse("A2"), TorsionGroup::Trivial));
}

TEST_CASE("input validation") {
  CHECK(kind_of([] { K3Context::from_transcendental(ade("8A1")); }) == ErrorKind::BadSignature);
  CHECK(kind_of([] { K3Context::from_transcendental(ade("9A1")); }) == ErrorKind::BadSignature);
  IntMatrix odd(9, 9, Int(0));
  odd(0, 0) = 1;
  odd(1, 1) = 1;
  for (std::size_t i = 2; i < 9; ++i) odd(i, i) = -1;
  CHECK(kind_of([&] { K3Context::from_transcendental(IntLattice(odd)); }) == ErrorKind::OddLattice);
  CHECK(parse_torsion_group("trivial") == TorsionGroup::Trivial);
  CHECK(parse_torsion_group("Z/2") == TorsionGroup::Z2);
  CHECK(to_string(TorsionGroup::Z2) == "Z/2");
  CHECK(kind_of([] { parse_torsion_group("Z/3"); }) == ErrorKind::UnsupportedGroup);
}

TEST_CASE("properties over U + U + R(-) for every rank-5 ADE configuration R") {
  const char* configs[] = {"A5",      "D5",      "A4+A1",   "A3+A2", "A3+2A1",  "D4+A1",
                           "2A2+A1",  "A2+3A1",  "5A1",     "A2+A3", "A1+A4",   "3A1+A2"};
  for (const char* s : configs) {
    CAPTURE(s);
    IntLattice T = direct_sum(direct_sum(hyperbolic(), hyperbolic()), ade(s));
    auto ctx = K3Context::from_transcendental(T);
    auto cert = fibration_exists(ctx);
    CHECK(cert.exists);
    CHECK(cert.lambda <= 9);
    auto v = mw_torsion_verdict(ctx, Rank3Options{2, std::chrono::milliseconds(5000)});
    CHECK(v.lambda == cert.lambda);
    CHECK_FALSE(v.torsion.empty());
    CHECK(v.torsion.front() == TorsionGroup::Trivial);
    if (v.lambda > 3) {
      CHECK(v.torsion.size() == 1);
      CHECK(v.searches.empty());
    }
    if (v.torsion.size() == 2) CHECK(v.configs.size() == 1);
  }
}
