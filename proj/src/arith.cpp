#include "mk3/arith.hpp"

#include <algorithm>
#include <cctype>

#include "mk3/errors.hpp"

namespace mk3 {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotTotallyReal: return "NotTotallyReal";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::DyadicPrime: return "DyadicPrime";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotAnOrder: return "NotAnOrder";
    case ErrorKind::NoFreeBasis: return "NoFreeBasis";
    case ErrorKind::DyadicAmbiguity: return "DyadicAmbiguity";
    case ErrorKind::Underdetermined: return "Underdetermined";
    case ErrorKind::NotQuadraticOverK: return "NotQuadraticOverK";
    case ErrorKind::NonIntegralGram: return "NonIntegralGram";
    case ErrorKind::MismatchDetected: return "MismatchDetected";
    case ErrorKind::OddLattice: return "OddLattice";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::BadSignature: return "BadSignature";
    case ErrorKind::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorKind::Validation: return "Validation";
  }
  return "Unknown";
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
  };
  auto strip_plus = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw Error(ErrorKind::Validation, "malformed rational '" + text + "'");
    return Rat(Int(strip_plus(s)));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw Error(ErrorKind::Validation, "malformed rational '" + text + "'");
  Int d(strip_plus(den));
  if (d == 0) throw Error(ErrorKind::Validation, "zero denominator in '" + text + "'");
  return make_rat(Int(strip_plus(num)), d);
}

Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

int sign(const Int& x) { return sgn(x); }
int sign(const Rat& x) { return sgn(x); }

Int abs(const Int& x) { return x < 0 ? Int(-x) : x; }

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Int pow(const Int& base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

int valuation(const Int& n, const Int& p) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, "valuation of zero");
  Int m = n;
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

int valuation(const Rat& x, const Int& p) {
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

bool is_probable_prime(const Int& n) {
  return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

// Brent's variant of Pollard rho; n odd composite.
Int pollard_rho(const Int& n) {
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto step = [&](const Int& v) {
      Int w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = q * abs(Int(x - y));
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs(Int(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(Int(n / d), out);
}

}  // namespace

std::vector<std::pair<Int, int>> factor_integer(const Int& n) {
  if (n == 0) throw Error(ErrorKind::ZeroElement, "factor_integer(0)");
  Int m = abs(n);
  std::vector<Int> primes;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    if (m == 1) break;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.emplace_back(p);
      m /= p;
    }
  }
  factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Int, int>> result;
  for (const auto& p : primes) {
    if (!result.empty() && result.back().first == p)
      ++result.back().second;
    else
      result.emplace_back(p, 1);
  }
  return result;
}

std::vector<Int> prime_support(const Rat& x) {
  std::vector<Int> out;
  for (const auto& [p, e] : factor_integer(x.get_num())) out.push_back(p);
  for (const auto& [p, e] : factor_integer(x.get_den())) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t to_u64(const Int& x) {
  if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 62)
    throw Error(ErrorKind::Validation, "prime " + x.get_str() + " exceeds 62 bits");
  return static_cast<std::uint64_t>(mpz_get_ui(x.get_mpz_t()));
}

}  // namespace mk3
