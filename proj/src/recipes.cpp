#include "mk3/recipes.hpp"

#include "mk3/errors.hpp"

namespace mk3 {

RunningExample running_example() {
  RunningExample ex;
  ex.K = NumberField::define({-1, -3, 0, 1});
  const NumberField& K = ex.K;
  const FieldElement b = K.theta(), one = K.one(), zero = K.zero();
  auto k = [&](Rat c0, Rat c1, Rat c2) { return K.element({c0, c1, c2}); };
  ex.B = QuaternionAlgebra(K.from_rational(-3), b);

  // zeta = -b/2 + (2b^2 - b - 4)/6 alpha
  // eta = -b/2 beta + (2b^2 - b - 4)/6 alpha beta
  // omega = -b + (b^2 - 1)/3 alpha - b beta + (b^2 - 1)/3 alpha beta
  const FieldElement s = k(make_rat(-2, 3), make_rat(-1, 6), make_rat(1, 3));
  const FieldElement w = k(make_rat(-1, 3), 0, make_rat(1, 3));
  const FieldElement half_b = make_rat(-1, 2) * b;
  QuatElement zeta = ex.B.element(half_b, s, zero, zero);
  QuatElement eta = ex.B.element(zero, zero, half_b, s);
  QuatElement omega = ex.B.element(-b, w, -b, w);
  ex.O = QuatOrder::from_generators(ex.B, {ex.B.one(), zeta, eta, omega});

  // zeta' = 2 zeta + b, omega' = omega + b
  ex.trace_zero_basis = {Rat(2) * zeta + ex.B.scalar(b), eta, omega + ex.B.scalar(b)};

  ex.printed_k_gram = KMatrix(3, 3, zero);
  auto& g = ex.printed_k_gram;
  g(0, 0) = k(-8, 0, 2);
  g(0, 2) = g(2, 0) = k(-2, 0, 0);
  g(1, 1) = k(0, 2, 0);
  g(1, 2) = g(2, 1) = k(1, 4, 0);
  g(2, 2) = k(2, 8, 0);

  ex.printed_gram = IntMatrix{{-12, 6, -12, 0, 0, 0, -6, 0, -12},   {6, -12, 6, 0, 0, 0, 0, -12, -6},
                              {-12, 6, -30, 0, 0, 0, -12, -6, -36}, {0, 0, 0, 0, 12, 6, 3, 24, 18},
                              {0, 0, 0, 12, 6, 36, 24, 18, 75},     {0, 0, 0, 6, 36, 30, 18, 75, 78},
                              {-6, 0, -12, 3, 24, 18, 6, 48, 36},   {0, -12, -6, 24, 18, 75, 48, 36, 150},
                              {-12, -6, -36, 18, 75, 78, 36, 150, 156}};
  return ex;
}

Example31Report reproduce_example_3_1(const Rank3Options& options) {
  RunningExample ex = running_example();
  ex.O.require_verified();
  TraceZeroLattice L = trace_zero_sublattice(ex.O);
  L.set_free_basis(ex.trace_zero_basis);
  const std::vector<std::string> labels = {"zeta'", "eta", "omega'"};

  Example31Report rep;
  rep.lambda = lambda_can(ex.B, ex.O, L, FormKind::Killing, labels);
  rep.k_gram_matches = rep.lambda.k_lattice && rep.lambda.k_lattice->gram == ex.printed_k_gram;

  const RatMatrix& z = rep.lambda.lattice.gram;
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c)
      if (z(r, c) != Rat(ex.printed_gram(r, c))) rep.mismatches.push_back({r, c, ex.printed_gram(r, c), z(r, c).get_num()});

  IntLattice T = rep.lambda.lattice.as_int_lattice();
  rep.disc_group = T.disc_group();
  rep.disc_form = disc_form(T);
  Int order = 1;
  for (const auto& d : rep.disc_group) order *= d;
  if (order != rep.lambda.abs_det)
    throw Error(ErrorKind::MismatchDetected, "discriminant group order differs from |det|");
  if (rep.lambda.predicted && *rep.lambda.predicted != rep.lambda.abs_det)
    throw Error(ErrorKind::MismatchDetected, "|det| differs from 2^d disc(K)^3 Nm(D)^2");

  rep.ramification = ramification_set(ex.B);
  rep.admissibility = is_mumford_admissible(ex.B);
  K3Context ctx = K3Context::from_transcendental(T);
  rep.fibration = fibration_exists(ctx);
  rep.verdict = mw_torsion_verdict(ctx, options);
  rep.twisted = lambda_can(ex.B, ex.O, L, FormKind::Twisted, labels);
  return rep;
}

Int cm_claimed_disc() { return pow(Int(2), 3) * pow(Int(3), 9) * pow(Int(3), 12); }

CmReport reproduce_cm() {
  NumberField K = NumberField::define({-1, -3, 0, 1});
  return cm_pipeline(K, K.theta(), K.one(), Rat(cm_claimed_disc()));
}

}  // namespace mk3
