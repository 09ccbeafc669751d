#include "mk3/ramification.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mk3/errors.hpp"

namespace mk3 {

std::string Place::to_string() const {
  if (is_real()) return "inf_" + std::to_string(real_index);
  return prime.to_string();
}

std::string to_string(Resolution r) {
  switch (r) {
    case Resolution::Determined: return "determined";
    case Resolution::ByProductFormula: return "by_product_formula";
    default: return "ambiguous";
  }
}

int hilbert_real(const FieldElement& a, const FieldElement& b, int place) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroElement, "Hilbert symbol with a zero entry");
  return (sign_at(a, place) < 0 && sign_at(b, place) < 0) ? -1 : 1;
}

namespace {

FieldElement int_power(const FieldElement& x, int n) {
  return n >= 0 ? x.pow(static_cast<unsigned>(n)) : x.inverse().pow(static_cast<unsigned>(-n));
}

}  // namespace

int hilbert_odd(const FieldElement& a, const FieldElement& b, const PrimeIdeal& P) {
  if (P.is_dyadic()) throw Error(ErrorKind::DyadicPrime, "tame symbol requires an odd prime");
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroElement, "Hilbert symbol with a zero entry");
  const int va = valuation(a, P);
  const int vb = valuation(b, P);
  // (-1)^{va vb} a^{vb} b^{-va} is a P-unit
  FieldElement c = int_power(a, vb) * int_power(b, -va);
  if ((va * vb) % 2 != 0) c = -c;
  return is_square_in_residue_field(c, P) ? 1 : -1;
}

std::vector<Place> relevant_places(const FieldElement& a, const FieldElement& b) {
  const NumberField& K = a.field();
  std::vector<Place> places;
  for (int i = 1; i <= K.degree(); ++i) places.push_back(Place::real(i));
  std::set<Int> primes{Int(2)};
  for (const auto* x : {&a, &b}) {
    for (const auto& p : prime_support(norm(*x))) primes.insert(p);
    for (const auto& c : x->coeffs())
      for (const auto& [p, e] : factor_integer(c.get_den())) primes.insert(p);
  }
  for (const auto& p : primes)
    for (auto& P : K.factor_prime(p)) places.push_back(Place::finite(std::move(P)));
  return places;
}

namespace {

PlaceSymbol symbol_at(const FieldElement& a, const FieldElement& b, const Place& v) {
  PlaceSymbol s{v, 1, false, true};
  if (v.is_real())
    s.symbol = hilbert_real(a, b, v.real_index);
  else if (v.prime.is_dyadic())
    s.known = false;
  else
    s.symbol = hilbert_odd(a, b, v.prime);
  return s;
}

}  // namespace

std::vector<PlaceSymbol> place_symbols_serial(const FieldElement& a, const FieldElement& b,
                                              const std::vector<Place>& places) {
  std::vector<PlaceSymbol> out;
  out.reserve(places.size());
  for (const auto& v : places) out.push_back(symbol_at(a, b, v));
  return out;
}

std::vector<PlaceSymbol> place_symbols(const FieldElement& a, const FieldElement& b, const std::vector<Place>& places) {
  std::vector<PlaceSymbol> out(places.size());
  const long n = static_cast<long>(places.size());
  std::string failure;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = symbol_at(a, b, places[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
#pragma omp critical
      failure = e.what();
    }
  }
  if (!failure.empty()) throw Error(ErrorKind::Validation, failure);
  return out;
}

RamificationReport ramification_set(const FieldElement& a, const FieldElement& b) {
  const NumberField& K = a.field();
  RamificationReport report;
  report.symbols = place_symbols(a, b, relevant_places(a, b));

  int product = 1;
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < report.symbols.size(); ++i) {
    if (report.symbols[i].known)
      product *= report.symbols[i].symbol;
    else
      unknown.push_back(i);
  }
  if (unknown.size() == 1) {
    auto& s = report.symbols[unknown.front()];
    s.symbol = product;
    s.inferred = true;
    s.known = true;
    report.resolution = Resolution::ByProductFormula;
  } else if (unknown.size() > 1) {
    report.resolution = Resolution::Ambiguous;
  }

  Ideal D = Ideal::unit(K);
  for (const auto& s : report.symbols) {
    if (!s.known || s.symbol == 1) continue;
    if (s.place.is_real()) {
      report.ramified_real.push_back(s.place.real_index);
    } else {
      report.ramified_finite.push_back(s.place.prime);
      D = D * Ideal::of_prime(K, s.place.prime);
    }
  }
  report.disc_ideal = D;
  if (report.resolution == Resolution::Ambiguous)
    throw DyadicAmbiguityError(std::to_string(unknown.size()) + " dyadic symbols cannot be resolved by the product formula",
                               report);
  if (report.ramified_count() % 2 != 0)
    throw Error(ErrorKind::MismatchDetected, "odd number of ramified places");
  return report;
}

RamificationReport ramification_set(const QuaternionAlgebra& B) { return ramification_set(B.a(), B.b()); }

AdmissibilityCertificate is_mumford_admissible(const QuaternionAlgebra& B) {
  AdmissibilityCertificate cert;
  const NumberField& K = B.field();
  cert.cubic = K.degree() == 3;
  if (!cert.cubic) cert.reasons.push_back("base field has degree " + std::to_string(K.degree()) + ", not 3");
  const RamificationReport ram = ramification_set(B);
  cert.ramified_real = static_cast<int>(ram.ramified_real.size());
  if (cert.cubic && cert.ramified_real != 2)
    cert.reasons.push_back(std::to_string(cert.ramified_real) + " real places ramified, need exactly 2");
  std::map<Int, int> above;
  for (const auto& P : ram.ramified_finite) ++above[P.p];
  for (const auto& [p, count] : above) {
    cert.ramified_above.emplace_back(p, count);
    if (count % 2 != 0)
      cert.reasons.push_back(std::to_string(count) + " ramified prime(s) above " + p.get_str() +
                             ": corestriction is not split");
  }
  cert.admissible = cert.reasons.empty();
  return cert;
}

DeductionReport quaternion_from_ram_deduction(const NumberField& K, const std::vector<Int>& allowed_primes) {
  if (K.degree() != 3) throw Error(ErrorKind::Validation, "ramification deduction needs a cubic field");
  DeductionReport report;
  std::vector<Int> primes = allowed_primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<std::string> open;
  for (const auto& p : primes) {
    PrimeDeduction pd;
    pd.p = p;
    pd.primes = K.factor_prime(p);
    pd.forced_unramified = pd.primes.size() == 1;
    if (!pd.forced_unramified) open.push_back(p.get_str());
    report.primes.push_back(std::move(pd));
  }
  if (!open.empty()) {
    std::string list;
    for (const auto& s : open) list += (list.empty() ? "" : ", ") + s;
    report.conclusion = "undetermined: an even number of the primes above " + list + " may ramify";
    throw UnderdeterminedError(report.conclusion, report);
  }
  report.conclusion = "no finite ramification; ramified only at two infinite places";
  return report;
}

}  // namespace mk3
