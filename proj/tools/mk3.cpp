// mk3 command-line front end.
//
// Exit codes: 0 success, 2 invalid input or usage, 3 a mathematical
// identity failed (a defect or a documented deviation, never silent).

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mk3/corestrict.hpp"
#include "mk3/errors.hpp"
#include "mk3/io.hpp"
#include "mk3/k3fib.hpp"
#include "mk3/lattice.hpp"
#include "mk3/recipes.hpp"

using namespace mk3;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMismatch = 3;

struct Common {
  std::string json_out;
  int bound = 0;  // 0: default or MK3_SEARCH_BOUND
  long time_cap_ms = 10000;
};

Rank3Options search_options(const Common& c) {
  Rank3Options o;
  if (const char* env = std::getenv("MK3_SEARCH_BOUND")) {
    try {
      o.bound = std::stoi(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Validation, "MK3_SEARCH_BOUND must be an integer");
    }
  }
  if (c.bound > 0) o.bound = c.bound;
  if (o.bound < 1) throw Error(ErrorKind::Validation, "search bound must be positive");
  o.time_cap = std::chrono::milliseconds(c.time_cap_ms);
  return o;
}

void write_json(const Common& c, const Json& j) {
  if (c.json_out.empty()) return;
  std::ofstream out(c.json_out);
  if (!out) throw Error(ErrorKind::Validation, "cannot write " + c.json_out);
  out << j.dump(2) << "\n";
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class M, class F>
void print_matrix(std::ostream& os, const M& m, F cell, const std::string& indent = "  ") {
  std::vector<std::string> cells;
  std::size_t w = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) {
      cells.push_back(cell(m(i, k)));
      w = std::max(w, cells.back().size());
    }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << indent << "[";
    for (std::size_t k = 0; k < m.cols(); ++k) os << (k ? " " : "") << std::setw(static_cast<int>(w)) << cells[i * m.cols() + k];
    os << "]\n";
  }
}

void print_int_matrix(std::ostream& os, const IntMatrix& m) {
  print_matrix(os, m, [](const Int& x) { return x.get_str(); });
}
void print_rat_matrix(std::ostream& os, const RatMatrix& m) {
  print_matrix(os, m, [](const Rat& x) { return to_string(x); });
}
void print_k_matrix(std::ostream& os, const KMatrix& m) {
  print_matrix(os, m, [](const FieldElement& x) { return x.to_string("t"); });
}

std::string group_string(const std::vector<Int>& invariant_factors) {
  if (invariant_factors.empty()) return "trivial";
  const std::vector<Int> factors = elementary_divisors(invariant_factors);
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < factors.size();) {
    std::size_t k = i;
    while (k < factors.size() && factors[k] == factors[i]) ++k;
    std::string s = "(Z/" + factors[i].get_str() + ")";
    if (k - i > 1) s += "^" + std::to_string(k - i);
    parts.push_back(s);
    i = k;
  }
  return join(parts, " x ");
}

std::string factorization_string(const Int& n) {
  if (n == 0) return "0";
  std::vector<std::string> parts;
  for (const auto& [p, e] : factor_integer(abs(n))) parts.push_back(p.get_str() + (e > 1 ? "^" + std::to_string(e) : ""));
  std::string s = n < 0 ? "-" : "";
  return s + (parts.empty() ? "1" : join(parts, " * "));
}

std::string splitting_kind(const std::vector<PrimeIdeal>& primes, int d) {
  if (primes.size() == 1 && primes[0].f == d) return "inert";
  if (primes.size() == 1 && primes[0].e == d) return "totally ramified";
  bool split = true, ram = false;
  for (const auto& P : primes) {
    if (P.e != 1 || P.f != 1) split = false;
    if (P.e > 1) ram = true;
  }
  if (split) return "totally split";
  return ram ? "ramified" : "partially split";
}

std::string sig_string(const Inertia& s) {
  std::string out = "(" + std::to_string(s.positive) + ", " + std::to_string(s.negative) + ")";
  if (s.zero) out += " with " + std::to_string(s.zero) + " null";
  return out;
}

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    Rat r = parse_rational(tok);
    if (!is_integral(r)) throw Error(ErrorKind::Validation, "expected an integer list, got '" + s + "'");
    out.push_back(r.get_num());
  }
  return out;
}

NumberField field_from_poly_string(const std::string& poly, const std::string& claimed) {
  std::vector<Int> coeffs;
  for (const auto& c : parse_poly(poly)) {
    if (!is_integral(c)) throw Error(ErrorKind::Validation, "minimal polynomial must have integer coefficients");
    coeffs.push_back(c.get_num());
  }
  std::optional<Int> disc;
  if (!claimed.empty()) disc = parse_rational(claimed).get_num();
  return NumberField::define(coeffs, disc);
}

// ---------------------------------------------------------------------------

void print_ramification(std::ostream& os, const RamificationReport& r) {
  os << "places:\n";
  for (const auto& s : r.symbols) {
    os << "  " << std::left << std::setw(24) << s.place.to_string() << std::right;
    if (!s.known)
      os << " unknown\n";
    else
      os << " " << (s.symbol > 0 ? "+1" : "-1") << (s.inferred ? "  (product formula)" : "") << "\n";
  }
  std::vector<std::string> ram;
  for (int i : r.ramified_real) ram.push_back("real " + std::to_string(i));
  for (const auto& P : r.ramified_finite) ram.push_back(P.to_string());
  os << "ramified: " << (ram.empty() ? "none" : join(ram, ", ")) << "\n";
  os << "disc ideal: " << r.disc_ideal.to_string("t") << "\n";
  os << "dyadic resolution: " << to_string(r.resolution) << "\n";
}

void print_admissibility(std::ostream& os, const AdmissibilityCertificate& c) {
  os << "Mumford-admissible: " << (c.admissible ? "yes" : "no") << "\n";
  for (const auto& r : c.reasons) os << "  - " << r << "\n";
}

void print_lambda(std::ostream& os, const LambdaCanReport& r) {
  os << "form: " << to_string(r.form) << "\n";
  if (r.k_lattice) {
    os << "K-Gram on " << join(r.k_lattice->labels, ", ") << ":\n";
    print_k_matrix(os, r.k_lattice->gram);
  }
  os << "basis: " << join(r.lattice.labels, ", ") << "\n";
  os << "Gram (" << r.lattice.gram.rows() << "x" << r.lattice.gram.cols() << "):\n";
  print_rat_matrix(os, r.lattice.gram);
  os << "integral: " << (r.lattice.integral ? "yes" : "no") << "\n";
  os << "signed det: " << to_string(r.lattice.signed_det);
  if (r.lattice.integral) os << " = " << factorization_string(r.lattice.signed_det.get_num());
  os << "\n";
  if (r.lattice.integral) os << "|disc|: " << r.abs_det << "\n";
  os << "signature: " << sig_string(r.signature) << "\n";
  if (r.identity)
    os << "det identity: det(Q_0) = " << to_string(r.identity->lhs) << " = disc(K)^" << r.identity->n
       << " * Nm(det Q) = " << r.identity->disc << "^" << r.identity->n << " * " << to_string(r.identity->norm_det)
       << "  ok\n";
  os << "maximal: " << to_string(r.maximal) << "\n";
  if (r.predicted)
    os << "predicted 2^d disc(K)^3 Nm(D)^2: " << *r.predicted << (*r.predicted == r.abs_det ? "  (matches)" : "  (MISMATCH)")
       << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
}

void print_disc_form(std::ostream& os, const DiscForm& F) {
  os << "group: " << group_string(F.factors) << " (order " << F.order() << ")\n";
  if (F.factors.empty()) return;
  os << "q on generators (mod 2):";
  for (const auto& v : F.q) os << " " << to_string(v);
  os << "\nb (mod 1):\n";
  print_rat_matrix(os, F.b);
}

void print_verdict(std::ostream& os, const FibrationVerdict& v) {
  std::vector<std::string> t, c;
  for (auto g : v.torsion) t.push_back(to_string(g));
  for (const auto& x : v.configs) c.push_back(x.to_string());
  os << "elliptic fibration with section: " << (v.fibration ? "yes" : "no") << "\n";
  os << "lambda: " << v.lambda << "\n";
  os << "Mordell-Weil torsion options: {" << join(t, ", ") << "}\n";
  if (!c.empty()) os << "witnessing configurations: " << join(c, ", ") << "\n";
  for (const auto& n : v.notes) os << "note: " << n << "\n";
  for (const auto& s : v.searches)
    if (s.witness) {
      os << "rank-3 witness:\n";
      print_int_matrix(os, *s.witness);
    }
}

// ---------------------------------------------------------------------------

int cmd_field_info(const Common& c, const std::string& poly, const std::string& claimed, const std::string& primes) {
  NumberField K = field_from_poly_string(poly, claimed);
  std::ostream& os = std::cout;
  os << "field: Q[x]/(" << K.name() << ")\n";
  os << "degree: " << K.degree() << "\n";
  os << "disc: " << K.disc() << " = " << factorization_string(K.disc()) << "\n";
  os << "real embeddings (increasing):\n";
  for (int i = 1; i <= K.degree(); ++i) {
    Interval iv = embed(K.theta(), i, 40);
    os << "  " << i << ": t ~ " << std::fixed << std::setprecision(6) << iv.lo.get_d() << "\n";
    os.unsetf(std::ios::floatfield);
  }
  os << "trace form Gram [Tr(t^(i+j))]:\n";
  print_rat_matrix(os, trace_form_gram(K));
  Json j = to_json(K);
  Json split = Json::array();
  if (!primes.empty()) {
    os << "primes:\n";
    for (const auto& p : parse_int_list(primes)) {
      auto above = K.factor_prime(p);
      std::vector<std::string> parts;
      Json arr = Json::array();
      for (const auto& P : above) {
        parts.push_back(P.to_string() + " e=" + std::to_string(P.e) + " f=" + std::to_string(P.f));
        arr.push_back(to_json(P));
      }
      os << "  " << p << ": " << join(parts, ", ") << "  [" << splitting_kind(above, K.degree()) << "]\n";
      split.push_back(Json{{"p", p.get_si()}, {"kind", splitting_kind(above, K.degree())}, {"primes_above", arr}});
    }
  }
  j["primes"] = split;
  write_json(c, j);
  return kExitOk;
}

QuaternionAlgebra algebra_from_args(const std::string& in, const std::string& poly, const std::string& a,
                                    const std::string& b) {
  if (!in.empty()) return algebra_from_json(read_json_file(in));
  if (poly.empty() || a.empty() || b.empty())
    throw Error(ErrorKind::Validation, "give --in FILE or all of --poly, --a, --b");
  NumberField K = field_from_poly_string(poly, "");
  return QuaternionAlgebra(element_from_json(K, Json(a)), element_from_json(K, Json(b)));
}

int cmd_quat_ram(const Common& c, const QuaternionAlgebra& B) {
  std::ostream& os = std::cout;
  os << "algebra: " << B.to_string() << "\n";
  Json j;
  try {
    RamificationReport r = ramification_set(B);
    print_ramification(os, r);
    j = to_json(r);
    if (B.field().degree() == 3) {
      AdmissibilityCertificate cert = is_mumford_admissible(B);
      print_admissibility(os, cert);
      j["admissibility"] = to_json(cert);
    }
  } catch (const DyadicAmbiguityError& e) {
    os << "dyadic symbols ambiguous; partial result:\n";
    print_ramification(os, e.partial());
    write_json(c, to_json(e.partial()));
    throw;
  }
  write_json(c, j);
  return kExitOk;
}

int cmd_order_check(const Common& c, const QuatOrder& O) {
  std::ostream& os = std::cout;
  const QuaternionAlgebra& B = O.algebra();
  os << "algebra: " << B.to_string() << "\n";
  os << "generators:\n";
  for (const auto& g : O.gens()) os << "  " << g.to_string("t") << "\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "nondegenerate: " << yn(O.nondegenerate()) << "\n";
  os << "contains 1: " << yn(O.contains_one()) << "\n";
  os << "integral (trd, nrd in O_K): " << yn(O.integral()) << "\n";
  os << "closed under multiplication: " << yn(O.is_ring()) << "\n";
  Json j{{"verified", O.verified()},
         {"nondegenerate", O.nondegenerate()},
         {"contains_one", O.contains_one()},
         {"integral", O.integral()},
         {"is_ring", O.is_ring()}};
  if (!O.verified()) {
    os << "not an order: " << O.failure() << "\n";
    j["failure"] = O.failure();
    write_json(c, j);
    throw Error(ErrorKind::NotAnOrder, O.failure());
  }
  os << "trace Gram [trd(e_i e_j)]:\n";
  print_k_matrix(os, trace_gram(O));
  Ideal disc = order_disc(O);
  os << "disc(O): " << disc.to_string("t") << " (norm " << disc.norm() << ")\n";
  j["trace_gram"] = to_json(trace_gram(O));
  j["disc"] = disc.to_string("t");
  try {
    RamificationReport r = ramification_set(B);
    const bool max = is_maximal(O, r.disc_ideal);
    os << "D(B): " << r.disc_ideal.to_string("t") << "\n";
    os << "maximal (disc(O) = D^2): " << yn(max) << "\n";
    j["D"] = r.disc_ideal.to_string("t");
    j["maximal"] = max ? "yes" : "no";
  } catch (const DyadicAmbiguityError& e) {
    os << "maximal: unknown (" << e.what() << ")\n";
    j["maximal"] = "unknown";
  }
  TraceZeroLattice L = trace_zero_sublattice(O);
  os << "O ∩ B^0: Z-rank " << L.gens().size();
  if (L.free_basis()) {
    os << ", free O_K-basis:\n";
    for (const auto& g : *L.free_basis()) os << "  " << g.to_string("t") << "\n";
  } else {
    os << ", no free O_K-basis found\n";
  }
  write_json(c, j);
  return kExitOk;
}

int cmd_lambda_can(const Common& c, const QuatOrder& O, const std::string& form) {
  O.require_verified();
  LambdaCanReport r = lambda_can(O.algebra(), O, parse_form(form));
  std::cout << "algebra: " << O.algebra().to_string() << "\n";
  print_lambda(std::cout, r);
  write_json(c, to_json(r));
  if (r.predicted && r.maximal == Tri::Yes && *r.predicted != r.abs_det)
    throw Error(ErrorKind::MismatchDetected, "|det| differs from 2^d disc(K)^3 Nm(D)^2 for a maximal order");
  return kExitOk;
}

IntLattice lattice_from_args(const std::string& in, const std::string& ade, const std::string& sign) {
  if (!in.empty() && !ade.empty()) throw Error(ErrorKind::Validation, "give either --in or --ade, not both");
  if (!ade.empty()) {
    if (sign != "negative" && sign != "positive") throw Error(ErrorKind::Validation, "--sign is positive or negative");
    return ade_lattice(ADEConfig::parse(ade), sign == "negative" ? Sign::Negative : Sign::Positive);
  }
  if (in.empty()) throw Error(ErrorKind::Validation, "give --in FILE or --ade CONFIG");
  return IntLattice(gram_from_json(read_json_file(in)));
}

int cmd_snf(const Common& c, const IntLattice& L) {
  SmithForm s = L.snf();
  std::ostream& os = std::cout;
  os << "rank: " << L.rank() << "\n";
  os << "det: " << L.det() << "\n";
  os << "signature: " << sig_string(L.signature()) << "\n";
  std::vector<Int> diag;
  for (std::size_t i = 0; i < L.rank(); ++i) diag.push_back(s.diagonal(i, i));
  os << "Smith diagonal:";
  for (const auto& d : diag) os << " " << d;
  os << "\n";
  std::vector<Int> factors;
  for (const auto& d : diag)
    if (d != 1 && d != 0) factors.push_back(d);
  os << "factors: [" << join([&] {
    std::vector<std::string> v;
    for (const auto& d : factors) v.push_back(d.get_str());
    return v;
  }(), ", ") << "]\n";
  Json jd = Json::array(), jf = Json::array();
  for (const auto& d : diag) jd.push_back(d.get_si());
  for (const auto& d : factors) jf.push_back(d.get_si());
  write_json(c, Json{{"diagonal", jd}, {"factors", jf}, {"det", L.det().get_str()}});
  return kExitOk;
}

int cmd_discform(const Common& c, const IntLattice& L) {
  DiscForm F = disc_form(L);
  print_disc_form(std::cout, F);
  LengthInfo len = length(F);
  std::cout << "length: " << len.lambda << "\n";
  write_json(c, to_json(F));
  return kExitOk;
}

int cmd_overlattices(const Common& c, const IntLattice& L, std::size_t max_order) {
  DiscForm F = disc_form(L);
  std::ostream& os = std::cout;
  os << "lattice: rank " << L.rank() << ", det " << L.det() << ", discriminant group " << group_string(F.factors) << "\n";
  auto subs = isotropic_subgroups(F, max_order);
  os << "isotropic subgroups with order <= " << max_order << ": " << subs.size() << "\n";
  Json arr = Json::array();
  for (const auto& H : subs) {
    IntLattice over = even_overlattice(L, F, H.generators);
    std::vector<std::string> gens;
    for (const auto& g : H.generators) {
      std::vector<std::string> v;
      for (const auto& x : g) v.push_back(x.get_str());
      gens.push_back("(" + join(v, ",") + ")");
    }
    const Int lhs = abs(L.det()), rhs = Int(static_cast<unsigned long>(H.order() * H.order())) * abs(over.det());
    os << "  |H| = " << H.order() << "  gens " << (gens.empty() ? "-" : join(gens, " ")) << "  |det L'| = " << abs(over.det())
       << "  index law " << lhs << " = " << H.order() << "^2 * " << abs(over.det()) << (lhs == rhs ? "  ok" : "  FAIL")
       << "\n";
    arr.push_back(Json{{"order", H.order()}, {"generators", gens}, {"overlattice_det", over.det().get_str()},
                       {"gram", to_json(over.gram())}});
  }
  write_json(c, Json{{"factors", to_json(F)["factors"]}, {"subgroups", arr}});
  return kExitOk;
}

std::pair<int, int> parse_sig(const std::string& s) {
  auto v = parse_int_list(s);
  if (v.size() != 2) throw Error(ErrorKind::Validation, "--sig expects p,q");
  return {static_cast<int>(v[0].get_si()), static_cast<int>(v[1].get_si())};
}

int cmd_rank3(const Common& c, const IntLattice& L, const std::string& sig) {
  DiscForm F = disc_form(L);
  auto [p, q] = parse_sig(sig);
  Rank3Options o = search_options(c);
  std::ostream& os = std::cout;
  os << "discriminant group: " << group_string(F.factors) << "\n";
  os << "signature requested: (" << p << ", " << q << "), bound " << o.bound << "\n";
  Rank3Result r = rank3_realizable(F, p, q, o);
  os << "realizable: " << to_string(r.status) << " (" << r.reason << ")\n";
  if (r.witness) {
    os << "witness:\n";
    print_int_matrix(os, *r.witness);
  }
  write_json(c, to_json(r));
  return kExitOk;
}

int cmd_k3(const Common& c, const IntLattice& T) {
  K3Context ctx = K3Context::from_transcendental(T);
  FibrationCertificate cert = fibration_exists(ctx);
  std::ostream& os = std::cout;
  os << "transcendental lattice: rank 9, signature (2, 7), det " << T.det() << "\n";
  os << "discriminant group: " << group_string(ctx.picard_disc_group) << "\n";
  os << "Picard rank: " << ctx.picard_rank << "\n";
  os << "fibration certificate: " << cert.inequality << "\n";
  FibrationVerdict v = mw_torsion_verdict(ctx, search_options(c));
  print_verdict(os, v);
  write_json(c, to_json(v));
  return kExitOk;
}

int cmd_reproduce_31(const Common& c) {
  Example31Report r = reproduce_example_3_1(search_options(c));
  RunningExample ex = running_example();
  std::ostream& os = std::cout;
  os << "field: Q[x]/(" << ex.K.name() << "), t = -(zeta_9 + zeta_9^-1)\n";
  os << "algebra: " << ex.B.to_string() << "\n";
  os << "order generators:\n";
  for (const auto& g : ex.O.gens()) os << "  " << g.to_string("t") << "\n";
  os << "order verified: " << (ex.O.verified() ? "yes" : "no") << "\n";
  os << "O ∩ B^0 basis zeta', eta, omega':\n";
  for (const auto& g : ex.trace_zero_basis) os << "  " << g.to_string("t") << "\n";
  os << "\n";
  print_ramification(os, r.ramification);
  print_admissibility(os, r.admissibility);
  os << "\n";
  print_lambda(os, r.lambda);
  os << "K-Gram agrees with the printed matrix: " << (r.k_gram_matches ? "yes" : "no") << "\n";
  os << "9x9 entries differing from the printed matrix: " << r.mismatches.size() << "\n";
  for (const auto& m : r.mismatches)
    os << "  (" << m.row + 1 << ", " << m.col + 1 << "): printed " << m.printed << ", computed " << m.computed << "\n";
  os << "discriminant group: " << group_string(r.disc_group) << "\n";
  os << "invariant factors:";
  for (const auto& d : r.disc_group) os << " " << d;
  os << "\n\n";
  print_verdict(os, r.verdict);
  if (r.twisted) {
    os << "\ntwisted form:\n";
    os << "  signed det: " << to_string(r.twisted->lattice.signed_det);
    if (r.twisted->lattice.integral) os << " = " << factorization_string(r.twisted->lattice.signed_det.get_num());
    os << "\n  signature: " << sig_string(r.twisted->signature) << "\n";
  }
  write_json(c, to_json(r));
  return kExitOk;
}

int cmd_reproduce_cm(const Common& c) {
  CmReport r = reproduce_cm();
  std::ostream& os = std::cout;
  os << "K = Q[x]/(" << r.field.name() << "), L = K[y]/(y^2 + (" << r.c1.to_string("t") << ")*y + " << r.c0.to_string("t")
     << ")\n";
  os << "relative trace Gram on {1, y}:\n";
  print_k_matrix(os, r.trace_gram);
  os << "delta = " << r.delta.to_string("t") << ", Nm(delta) = " << to_string(r.norm_delta) << "\n";
  os << "Killing discriminant 2*delta^3, norm " << to_string(r.norm_killing_disc) << "\n";
  os << "corestricted discriminant disc(K)^3 * Nm(2*delta^3) = " << to_string(r.corestricted_disc) << " = "
     << factorization_string(r.corestricted_disc.get_num()) << "\n";
  if (r.claimed)
    os << "printed claim: " << to_string(*r.claimed) << " = 2^3 * 3^9 * 3^12  -> "
       << (r.discrepancy ? "DISCREPANCY (exponent of 3 differs)" : "agrees") << "\n";
  std::vector<std::string> sup;
  for (const auto& p : r.prime_support) sup.push_back(p.get_str());
  os << "prime support: {" << join(sup, ", ") << "}\n";
  for (const auto& [p, primes] : r.splitting) {
    std::vector<std::string> parts;
    for (const auto& P : primes) parts.push_back(P.to_string() + " e=" + std::to_string(P.e) + " f=" + std::to_string(P.f));
    os << "  " << p << ": " << join(parts, ", ") << "  [" << splitting_kind(primes, r.field.degree()) << "]\n";
  }
  os << "forced finite ramification: ";
  if (r.deduction.finite_ramified.empty())
    os << "none\n";
  else {
    std::vector<std::string> v;
    for (const auto& P : r.deduction.finite_ramified) v.push_back(P.to_string());
    os << join(v, ", ") << "\n";
  }
  os << "conclusion: " << r.deduction.conclusion << "\n";
  write_json(c, to_json(r));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mk3: canonical lattices of quaternion algebras over totally real fields"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--json", common.json_out, "write a machine-readable report to this file");

  std::function<int()> action;

  // field info
  auto* field = app.add_subcommand("field", "number field tools")->require_subcommand(1);
  std::string poly, claimed, primes;
  auto* finfo = field->add_subcommand("info", "discriminant, embeddings and prime splitting");
  finfo->add_option("--poly", poly, "minimal polynomial, e.g. \"x^3-3x-1\"")->required();
  finfo->add_option("--disc", claimed, "claimed field discriminant to verify");
  finfo->add_option("--primes", primes, "comma-separated rational primes to factor");
  finfo->callback([&] { action = [&] { return cmd_field_info(common, poly, claimed, primes); }; });

  // quat
  auto* quat = app.add_subcommand("quat", "quaternion algebras and orders")->require_subcommand(1);
  std::string in, qa, qb;
  auto* qram = quat->add_subcommand("ram", "ramification set and admissibility");
  qram->add_option("--in", in, "quaternion descriptor (JSON)");
  qram->add_option("--poly", poly, "minimal polynomial of K");
  qram->add_option("--a", qa, "a as a polynomial in t");
  qram->add_option("--b", qb, "b as a polynomial in t");
  qram->callback([&] { action = [&] { return cmd_quat_ram(common, algebra_from_args(in, poly, qa, qb)); }; });
  auto* qorder = quat->add_subcommand("order-check", "verify an order and test maximality");
  qorder->add_option("--in", in, "order descriptor (JSON)")->required();
  qorder->callback([&] { action = [&] { return cmd_order_check(common, order_from_json(read_json_file(in))); }; });

  // lambda-can
  std::string form = "killing";
  auto* lcan = app.add_subcommand("lambda-can", "canonical lattice of an order");
  lcan->add_option("--in", in, "order descriptor (JSON)")->required();
  lcan->add_option("--form", form, "killing or twisted")->check(CLI::IsMember({"killing", "twisted"}));
  lcan->callback([&] { action = [&] { return cmd_lambda_can(common, order_from_json(read_json_file(in)), form); }; });

  // lattice
  auto* lat = app.add_subcommand("lattice", "integer lattice tools")->require_subcommand(1);
  std::string ade, sign = "negative", sig = "0,3";
  std::size_t max_order = 4;
  auto add_lattice_inputs = [&](CLI::App* sub) {
    sub->add_option("--in", in, "lattice file {\"gram\": [[...]]}");
    sub->add_option("--ade", ade, "ADE configuration instead of a file, e.g. 4A1");
    sub->add_option("--sign", sign, "sign of the ADE lattice (negative or positive)");
  };
  auto* lsnf = lat->add_subcommand("snf", "Smith normal form and discriminant group");
  add_lattice_inputs(lsnf);
  lsnf->callback([&] { action = [&] { return cmd_snf(common, lattice_from_args(in, ade, sign)); }; });
  auto* ldf = lat->add_subcommand("discform", "discriminant form of an even lattice");
  add_lattice_inputs(ldf);
  ldf->callback([&] { action = [&] { return cmd_discform(common, lattice_from_args(in, ade, sign)); }; });
  auto* lov = lat->add_subcommand("overlattices", "even overlattices from isotropic subgroups");
  add_lattice_inputs(lov);
  lov->add_option("--max-order", max_order, "largest subgroup order");
  lov->callback([&] { action = [&] { return cmd_overlattices(common, lattice_from_args(in, ade, sign), max_order); }; });
  auto* lr3 = lat->add_subcommand("rank3", "rank-3 realizability of the discriminant form");
  add_lattice_inputs(lr3);
  lr3->add_option("--sig", sig, "signature p,q of the rank-3 lattice");
  lr3->add_option("--bound", common.bound, "entry bound (default 6, or MK3_SEARCH_BOUND)");
  lr3->add_option("--time-cap", common.time_cap_ms, "wall-clock cap in milliseconds");
  lr3->callback([&] { action = [&] { return cmd_rank3(common, lattice_from_args(in, ade, sign), sig); }; });

  // k3
  auto* k3 = app.add_subcommand("k3", "K3 fibration and torsion analysis")->require_subcommand(1);
  auto* k3a = k3->add_subcommand("analyze", "fibration existence and Mordell-Weil torsion verdict");
  k3a->add_option("--in", in, "transcendental lattice file")->required();
  k3a->add_option("--bound", common.bound, "rank-3 search bound");
  k3a->add_option("--time-cap", common.time_cap_ms, "wall-clock cap in milliseconds");
  k3a->callback([&] { action = [&] { return cmd_k3(common, lattice_from_args(in, "", sign)); }; });

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "baked-in reproductions")->require_subcommand(1);
  auto* r31 = rep->add_subcommand("example-3-1", "the cubic-field quaternion and its canonical lattice");
  r31->add_option("--bound", common.bound, "rank-3 search bound");
  r31->callback([&] { action = [&] { return cmd_reproduce_31(common); }; });
  auto* rcm = rep->add_subcommand("cm-fourfold", "discriminant of the CM example and its ramification");
  rcm->callback([&] { action = [&] { return cmd_reproduce_cm(common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    return action ? action() : kExitInput;
  } catch (const Error& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::MismatchDetected ? kExitMismatch : kExitInput;
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
