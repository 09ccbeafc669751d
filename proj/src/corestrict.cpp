#include "mk3/corestrict.hpp"

#include "mk3/errors.hpp"

namespace mk3 {

namespace {

Rat qabs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

std::string power_label(std::size_t j, const std::string& g) {
  if (j == 0) return "phi(" + g + ")";
  if (j == 1) return "phi(t*" + g + ")";
  return "phi(t^" + std::to_string(j) + "*" + g + ")";
}

void validate(const KQuadLattice& L) {
  if (!L.gram.is_symmetric()) throw Error(ErrorKind::Validation, "K-Gram must be square and symmetric");
  if (L.labels.size() != L.gram.rows()) throw Error(ErrorKind::Validation, "one label per generator required");
  for (std::size_t i = 0; i < L.gram.rows(); ++i)
    for (std::size_t j = 0; j < L.gram.cols(); ++j)
      if (L.gram(i, j).field() != L.field) throw Error(ErrorKind::FieldMismatch, "Gram entry over a different field");
}

CanonicalLattice shell(const KQuadLattice& L) {
  const std::size_t n = L.gram.rows(), d = static_cast<std::size_t>(L.field.degree());
  CanonicalLattice C;
  C.gram = RatMatrix(n * d, n * d, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) C.labels.push_back(power_label(j, L.labels[i]));
  return C;
}

void finish(CanonicalLattice& C) {
  C.integral = true;
  for (std::size_t r = 0; r < C.gram.rows(); ++r)
    for (std::size_t s = 0; s < C.gram.cols(); ++s)
      if (!is_integral(C.gram(r, s))) C.integral = false;
  C.signed_det = det(C.gram);
}

}  // namespace

CanonicalLattice corestrict_serial(const KQuadLattice& L) {
  validate(L);
  const std::size_t n = L.gram.rows(), d = static_cast<std::size_t>(L.field.degree());
  CanonicalLattice C = shell(L);
  const FieldElement t = L.field.theta();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < d; ++l)
          C.gram(i * d + j, k * d + l) = trace(L.gram(i, k) * t.pow(static_cast<unsigned>(j + l)));
  finish(C);
  return C;
}

CanonicalLattice corestrict(const KQuadLattice& L) {
  validate(L);
  const std::size_t n = L.gram.rows(), d = static_cast<std::size_t>(L.field.degree());
  const std::size_t m = 2 * d - 1;
  std::vector<FieldElement> powers;
  for (std::size_t e = 0; e < m; ++e) powers.push_back(L.field.theta().pow(static_cast<unsigned>(e)));

  // table[(i*n + k)*m + e] = Tr(Q_ik theta^e)
  std::vector<Rat> table(n * n * m);
  const long total = static_cast<long>(n * n * m);
#pragma omp parallel for schedule(dynamic)
  for (long idx = 0; idx < total; ++idx) {
    const std::size_t u = static_cast<std::size_t>(idx);
    const std::size_t e = u % m, ik = u / m;
    table[u] = trace(L.gram(ik / n, ik % n) * powers[e]);
  }

  CanonicalLattice C = shell(L);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < d; ++l) C.gram(i * d + j, k * d + l) = table[(i * n + k) * m + j + l];
  finish(C);
  return C;
}

DetIdentity det_identity_check(const KQuadLattice& L, const CanonicalLattice& C) {
  DetIdentity id;
  id.n = static_cast<int>(L.gram.rows());
  id.disc = L.field.disc();
  id.norm_det = norm(det(L.gram));
  id.lhs = C.signed_det;
  id.rhs = Rat(pow(id.disc, static_cast<unsigned>(id.n))) * id.norm_det;
  if (id.lhs != id.rhs)
    throw Error(ErrorKind::MismatchDetected, "det(Q_0) = " + to_string(id.lhs) + " but disc^n Nm(det Q) = " +
                                                 to_string(id.rhs));
  return id;
}

Int predicted_canonical_disc(const NumberField& K, const Ideal& D) {
  const Int n = D.norm();
  return pow(Int(2), static_cast<unsigned>(K.degree())) * pow(abs(K.disc()), 3) * n * n;
}

LambdaCanReport lambda_can(const QuaternionAlgebra& B, const QuatOrder& O, FormKind form) {
  return lambda_can(B, O, trace_zero_sublattice(O), form);
}

LambdaCanReport lambda_can(const QuaternionAlgebra& B, const QuatOrder& O, const TraceZeroLattice& L, FormKind form,
                           const std::vector<std::string>& labels) {
  if (O.algebra() != B) throw Error(ErrorKind::AlgebraMismatch, "order belongs to a different algebra");
  O.require_verified();
  const NumberField& K = B.field();
  LambdaCanReport rep;
  rep.form = form;

  try {
    RamificationReport ram = ramification_set(B);
    rep.disc_ideal = ram.disc_ideal;
    rep.maximal = is_maximal(O, ram.disc_ideal) ? Tri::Yes : Tri::No;
    if (rep.maximal == Tri::No) rep.warnings.push_back("order is not maximal: disc(O) != D^2");
    if (K.degree() == 3) {
      AdmissibilityCertificate cert = is_mumford_admissible(B);
      for (const auto& r : cert.reasons) rep.warnings.push_back("not Mumford-admissible: " + r);
    }
    if (form == FormKind::Killing) rep.predicted = predicted_canonical_disc(K, ram.disc_ideal);
  } catch (const DyadicAmbiguityError& e) {
    rep.warnings.push_back(std::string("ramification undetermined: ") + e.what());
  }

  if (L.free_basis()) {
    KQuadLattice kq;
    kq.field = K;
    kq.labels = labels;
    kq.gram = k_gram_on(L, form);
    rep.lattice = corestrict(kq);
    rep.identity = det_identity_check(kq, rep.lattice);
    rep.k_lattice = std::move(kq);
  } else {
    rep.warnings.push_back("no free O_K-basis found; using the Z-level Gram on O ∩ B^0");
    const auto& g = L.gens();
    CanonicalLattice C;
    C.gram = RatMatrix(g.size(), g.size(), Rat(0));
    for (std::size_t r = 0; r < g.size(); ++r) {
      C.labels.push_back("phi(z" + std::to_string(r + 1) + ")");
      for (std::size_t s = r; s < g.size(); ++s) C.gram(r, s) = C.gram(s, r) = trace(apply_form(form, g[r], g[s]));
    }
    finish(C);
    rep.lattice = std::move(C);
  }
  if (!rep.lattice.integral) rep.warnings.push_back("corestricted Gram is not integral");

  rep.signature = inertia(rep.lattice.gram);
  rep.abs_det = abs(Int(rep.lattice.signed_det.get_num()));
  if (!rep.lattice.integral) rep.abs_det = 0;
  if (K.degree() == 3 && rep.warnings.empty() && !(rep.signature.positive == 2 && rep.signature.negative == 7) &&
      form == FormKind::Killing)
    rep.warnings.push_back("signature differs from (2, 7)");
  return rep;
}

CmReport cm_pipeline(const NumberField& K, const FieldElement& c1, const FieldElement& c0, std::optional<Rat> claimed) {
  if (c1.field() != K || c0.field() != K) throw Error(ErrorKind::FieldMismatch, "coefficients must lie in K");
  CmReport rep;
  rep.field = K;
  rep.c1 = c1;
  rep.c0 = c0;
  rep.delta = c1 * c1 - Rat(4) * c0;
  if (rep.delta.is_zero()) throw Error(ErrorKind::NotQuadraticOverK, "y^2 + c1 y + c0 is not separable");
  for (int v = 1; v <= K.degree(); ++v)
    if (sign_at(rep.delta, v) > 0)
      throw Error(ErrorKind::NotQuadraticOverK,
                  "c1^2 - 4c0 is positive at real place " + std::to_string(v) + ", so L/K is not CM");

  // Tr_{L/K} on {1, y}: Tr(1) = 2, Tr(y) = -c1, Tr(y^2) = c1^2 - 2 c0
  rep.trace_gram = KMatrix(2, 2, K.zero());
  rep.trace_gram(0, 0) = K.from_rational(2);
  rep.trace_gram(0, 1) = rep.trace_gram(1, 0) = -c1;
  rep.trace_gram(1, 1) = c1 * c1 - Rat(2) * c0;
  if (det(rep.trace_gram) != rep.delta) throw Error(ErrorKind::MismatchDetected, "relative trace Gram determinant");

  rep.norm_delta = norm(rep.delta);
  rep.killing_disc = Rat(2) * rep.delta.pow(3);
  rep.norm_killing_disc = norm(rep.killing_disc);
  rep.corestricted_disc = Rat(pow(K.disc(), 3)) * rep.norm_killing_disc;
  rep.prime_support = prime_support(rep.corestricted_disc);
  for (const auto& p : rep.prime_support) rep.splitting.emplace_back(p, K.factor_prime(p));
  rep.claimed = claimed;
  if (claimed) rep.discrepancy = qabs(*claimed) != qabs(rep.corestricted_disc);
  rep.deduction = quaternion_from_ram_deduction(K, rep.prime_support);
  return rep;
}

}  // namespace mk3
