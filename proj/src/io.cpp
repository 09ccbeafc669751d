#include "mk3/io.hpp"

#include <fstream>
#include <set>

#include "mk3/errors.hpp"

namespace mk3 {

namespace {

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw Error(ErrorKind::Validation, std::string(what) + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw Error(ErrorKind::Validation, std::string("unknown key '") + k + "' in " + what);
}

const Json& need(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw Error(ErrorKind::Validation, std::string("missing key '") + key + "' in " + what);
  return j.at(key);
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Rat r = parse_rational(j.get<std::string>());
    if (!is_integral(r)) throw Error(ErrorKind::Validation, "expected an integer, got " + j.dump());
    return r.get_num();
  }
  throw Error(ErrorKind::Validation, "expected an integer, got " + j.dump());
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorKind::Validation, "expected an integer or \"p/q\" string, got " + j.dump());
}

Json int_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Validation, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Validation, path + ": " + e.what());
  }
}

NumberField field_from_json(const Json& j) {
  only_keys(j, {"min_poly", "disc"}, "field descriptor");
  const Json& mp = need(j, "min_poly", "field descriptor");
  std::vector<Int> coeffs;
  if (mp.is_string()) {
    for (const auto& c : parse_poly(mp.get<std::string>())) {
      if (!is_integral(c)) throw Error(ErrorKind::Validation, "min_poly must have integer coefficients");
      coeffs.push_back(c.get_num());
    }
  } else if (mp.is_array()) {
    for (const auto& c : mp) coeffs.push_back(int_from_json(c));
  } else {
    throw Error(ErrorKind::Validation, "min_poly must be an array or a polynomial string");
  }
  std::optional<Int> claimed;
  if (j.contains("disc")) claimed = int_from_json(j.at("disc"));
  return NumberField::define(coeffs, claimed);
}

FieldElement element_from_json(const NumberField& K, const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find_first_of("tbx") != std::string::npos) return K.from_poly(parse_poly(s));
    return K.from_rational(parse_rational(s));
  }
  if (j.is_number_integer()) return K.from_rational(Rat(j.get<long>()));
  if (!j.is_array()) throw Error(ErrorKind::Validation, "field element must be an array, a number or a string");
  if (static_cast<int>(j.size()) > K.degree())
    throw Error(ErrorKind::Validation, "field element has more than " + std::to_string(K.degree()) + " coefficients");
  std::vector<Rat> c;
  for (const auto& x : j) c.push_back(rat_from_json(x));
  return K.element(std::move(c));
}

QuaternionAlgebra algebra_from_json(const Json& j) {
  only_keys(j, {"field", "a", "b"}, "quaternion descriptor");
  NumberField K = field_from_json(need(j, "field", "quaternion descriptor"));
  return QuaternionAlgebra(element_from_json(K, need(j, "a", "quaternion descriptor")),
                           element_from_json(K, need(j, "b", "quaternion descriptor")));
}

QuatOrder order_from_json(const Json& j) {
  only_keys(j, {"algebra", "generators"}, "order descriptor");
  QuaternionAlgebra B = algebra_from_json(need(j, "algebra", "order descriptor"));
  const Json& g = need(j, "generators", "order descriptor");
  if (!g.is_array() || g.size() != 4) throw Error(ErrorKind::Validation, "an order needs exactly 4 generators");
  std::array<QuatElement, 4> gens;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!g[i].is_array() || g[i].size() != 4)
      throw Error(ErrorKind::Validation, "each generator is a list of 4 field elements");
    gens[i] = B.element(element_from_json(B.field(), g[i][0]), element_from_json(B.field(), g[i][1]),
                        element_from_json(B.field(), g[i][2]), element_from_json(B.field(), g[i][3]));
  }
  return QuatOrder::from_generators(B, gens);
}

IntMatrix gram_from_json(const Json& j) {
  only_keys(j, {"gram"}, "lattice file");
  const Json& g = need(j, "gram", "lattice file");
  if (!g.is_array() || g.empty()) throw Error(ErrorKind::Validation, "gram must be a non-empty list of rows");
  const std::size_t n = g.size();
  IntMatrix m(n, n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!g[i].is_array() || g[i].size() != n) throw Error(ErrorKind::Validation, "gram must be square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = int_from_json(g[i][k]);
  }
  if (!m.is_symmetric()) throw Error(ErrorKind::Validation, "gram must be symmetric");
  return m;
}

// ---------------------------------------------------------------------------

Json rat_json(const Rat& x) { return to_string(x); }

Json to_json(const NumberField& K) {
  Json c = Json::array();
  for (const auto& x : K.min_poly()) c.push_back(int_json(x.get_num()));
  return Json{{"min_poly", c}, {"disc", int_json(K.disc())}};
}

Json to_json(const FieldElement& x) {
  Json c = Json::array();
  for (int i = 0; i < x.field().degree(); ++i)
    c.push_back(rat_json(static_cast<std::size_t>(i) < x.coeffs().size() ? x[static_cast<std::size_t>(i)] : Rat(0)));
  return c;
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(int_json(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      r.push_back(is_integral(m(i, k)) ? int_json(m(i, k).get_num()) : rat_json(m(i, k)));
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const KMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(m(i, k).to_string("t"));
    rows.push_back(r);
  }
  return rows;
}

Json to_json(const PrimeIdeal& P) {
  return Json{{"p", int_json(P.p)}, {"g", P.g.to_string("t")}, {"e", P.e}, {"f", P.f}};
}

Json to_json(const RamificationReport& r) {
  Json fin = Json::array();
  for (const auto& P : r.ramified_finite) fin.push_back(to_json(P));
  return Json{{"ramified_real", r.ramified_real},
              {"ramified_finite", fin},
              {"disc_ideal", r.disc_ideal.to_string("t")},
              {"resolution", to_string(r.resolution)}};
}

Json to_json(const AdmissibilityCertificate& c) {
  Json above = Json::array();
  for (const auto& [p, n] : c.ramified_above) above.push_back(Json{{"p", int_json(p)}, {"count", n}});
  return Json{{"admissible", c.admissible},
              {"cubic", c.cubic},
              {"ramified_real", c.ramified_real},
              {"ramified_above", above},
              {"reasons", c.reasons}};
}

Json to_json(const DiscForm& F) {
  Json factors = Json::array(), q = Json::array(), b = Json::array();
  for (const auto& d : F.factors) factors.push_back(int_json(d));
  for (const auto& v : F.q) q.push_back(to_string(v) + " mod 2");
  for (std::size_t i = 0; i < F.factors.size(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < F.factors.size(); ++k) row.push_back(to_string(F.b(i, k)) + " mod 1");
    b.push_back(row);
  }
  return Json{{"factors", factors}, {"q", q}, {"b", b}};
}

Json to_json(const LambdaCanReport& r) {
  Json j{{"form", to_string(r.form)},
         {"gram", to_json(r.lattice.gram)},
         {"labels", r.lattice.labels},
         {"signed_det", r.lattice.integral ? int_json(r.lattice.signed_det.get_num()) : rat_json(r.lattice.signed_det)},
         {"predicted_disc", r.predicted ? int_json(*r.predicted) : Json(nullptr)},
         {"signature", {r.signature.positive, r.signature.negative}}};
  j["integral"] = r.lattice.integral;
  j["maximal"] = to_string(r.maximal);
  if (r.k_lattice) j["k_gram"] = to_json(r.k_lattice->gram);
  if (r.identity)
    j["det_identity"] = Json{{"lhs", rat_json(r.identity->lhs)}, {"rhs", rat_json(r.identity->rhs)}};
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const Rank3Result& r) {
  Json j{{"status", to_string(r.status)}, {"reason", r.reason}, {"timed_out", r.timed_out}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const FibrationVerdict& v) {
  Json torsion = Json::array(), configs = Json::array();
  for (auto g : v.torsion) torsion.push_back(to_string(g));
  for (const auto& c : v.configs) configs.push_back(c.to_string());
  Json j{{"fibration", v.fibration}, {"lambda", v.lambda}, {"torsion", torsion}, {"configs", configs}, {"notes", v.notes}};
  if (!v.searches.empty()) {
    Json s = Json::array();
    for (const auto& r : v.searches) s.push_back(to_json(r));
    j["searches"] = s;
  }
  return j;
}

Json to_json(const DeductionReport& d) {
  Json primes = Json::array(), fin = Json::array();
  for (const auto& pd : d.primes) {
    Json above = Json::array();
    for (const auto& P : pd.primes) above.push_back(to_json(P));
    primes.push_back(Json{{"p", int_json(pd.p)}, {"primes_above", above}, {"forced_unramified", pd.forced_unramified}});
  }
  for (const auto& P : d.finite_ramified) fin.push_back(to_json(P));
  return Json{{"primes", primes}, {"finite_ramified", fin}, {"real_ramified", d.real_ramified}, {"conclusion", d.conclusion}};
}

Json to_json(const CmReport& r) {
  Json support = Json::array(), split = Json::array();
  for (const auto& p : r.prime_support) support.push_back(int_json(p));
  for (const auto& [p, primes] : r.splitting) {
    Json above = Json::array();
    for (const auto& P : primes) above.push_back(to_json(P));
    split.push_back(Json{{"p", int_json(p)}, {"primes_above", above}});
  }
  return Json{{"field", to_json(r.field)},
              {"c1", r.c1.to_string("t")},
              {"c0", r.c0.to_string("t")},
              {"trace_gram", to_json(r.trace_gram)},
              {"delta", r.delta.to_string("t")},
              {"norm_delta", rat_json(r.norm_delta)},
              {"killing_disc", r.killing_disc.to_string("t")},
              {"norm_killing_disc", rat_json(r.norm_killing_disc)},
              {"corestricted_disc", rat_json(r.corestricted_disc)},
              {"prime_support", support},
              {"splitting", split},
              {"claimed_disc", r.claimed ? rat_json(*r.claimed) : Json(nullptr)},
              {"discrepancy", r.discrepancy},
              {"deduction", to_json(r.deduction)}};
}

Json to_json(const Example31Report& r) {
  Json mism = Json::array();
  for (const auto& m : r.mismatches)
    mism.push_back(Json{{"row", m.row}, {"col", m.col}, {"printed", int_json(m.printed)}, {"computed", int_json(m.computed)}});
  Json groups = Json::array();
  for (const auto& d : r.disc_group) groups.push_back(int_json(d));
  Json j{{"lambda_can", to_json(r.lambda)},
         {"k_gram_matches_print", r.k_gram_matches},
         {"entry_mismatches", mism},
         {"disc_group", groups},
         {"ramification", to_json(r.ramification)},
         {"admissibility", to_json(r.admissibility)},
         {"fibration", Json{{"exists", r.fibration.exists}, {"lambda", r.fibration.lambda}, {"certificate", r.fibration.inequality}}},
         {"verdict", to_json(r.verdict)}};
  if (r.twisted) j["twisted"] = to_json(*r.twisted);
  return j;
}

}  // namespace mk3
