#include "mk3/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>

#include "mk3/errors.hpp"

namespace mk3 {

void normalize(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const RatPoly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<int>(i);
  return -1;
}

Rat evaluate(const RatPoly& f, const Rat& x) {
  Rat r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

RatPoly operator+(const RatPoly& f, const RatPoly& g) {
  RatPoly r(std::max(f.size(), g.size()), Rat(0));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] += g[i];
  normalize(r);
  return r;
}

RatPoly operator-(const RatPoly& f, const RatPoly& g) {
  RatPoly r(std::max(f.size(), g.size()), Rat(0));
  for (std::size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (std::size_t i = 0; i < g.size(); ++i) r[i] -= g[i];
  normalize(r);
  return r;
}

RatPoly operator*(const RatPoly& f, const RatPoly& g) {
  if (f.empty() || g.empty()) return {};
  RatPoly r(f.size() + g.size() - 1, Rat(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  }
  normalize(r);
  return r;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& f, const RatPoly& g) {
  const int dg = degree(g);
  if (dg < 0) throw Error(ErrorKind::ZeroElement, "polynomial division by zero");
  RatPoly rem = f;
  normalize(rem);
  RatPoly quo;
  if (degree(rem) >= dg) quo.assign(static_cast<std::size_t>(degree(rem) - dg + 1), Rat(0));
  while (degree(rem) >= dg) {
    const int dr = degree(rem);
    Rat c = rem[static_cast<std::size_t>(dr)] / g[static_cast<std::size_t>(dg)];
    const std::size_t shift = static_cast<std::size_t>(dr - dg);
    quo[shift] = c;
    for (int i = 0; i <= dg; ++i) rem[shift + static_cast<std::size_t>(i)] -= c * g[static_cast<std::size_t>(i)];
    normalize(rem);
  }
  normalize(quo);
  return {quo, rem};
}

RatPoly derivative(const RatPoly& f) {
  RatPoly r;
  for (std::size_t i = 1; i < f.size(); ++i) r.push_back(f[i] * static_cast<long>(i));
  normalize(r);
  return r;
}

std::string format_poly(const RatPoly& f, const std::string& var) {
  if (degree(f) < 0) return "0";
  std::string out;
  for (int i = degree(f); i >= 0; --i) {
    const Rat& c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rat mag = c < 0 ? Rat(-c) : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (i == 0 || mag != 1) {
      out += to_string(mag);
      if (i > 0) out += "*";
    }
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

RatPoly parse_poly(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::Validation, "empty polynomial");
  std::map<int, Rat> terms;
  char var = 0;
  std::size_t i = 0;
  auto fail = [&]() { throw Error(ErrorKind::Validation, "cannot parse polynomial '" + text + "'"); };
  while (i < s.size()) {
    int sgn = 1;
    if (s[i] == '+' || s[i] == '-') {
      sgn = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!terms.empty() || i != 0) {
      fail();
    }
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    Rat coeff = 1;
    bool has_coeff = i > start;
    if (has_coeff) coeff = parse_rational(s.substr(start, i - start));
    if (i < s.size() && s[i] == '*') {
      if (!has_coeff) fail();
      ++i;
    }
    int exp = 0;
    if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      if (var && s[i] != var) fail();
      var = s[i++];
      exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t es = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (es == i) fail();
        exp = std::stoi(s.substr(es, i - es));
      }
    } else if (!has_coeff) {
      fail();
    }
    terms[exp] += sgn * coeff;
  }
  RatPoly f(static_cast<std::size_t>(terms.rbegin()->first + 1), Rat(0));
  for (const auto& [e, c] : terms) f[static_cast<std::size_t>(e)] = c;
  normalize(f);
  return f;
}

std::vector<RatPoly> sturm_chain(const RatPoly& f) {
  std::vector<RatPoly> chain{f, derivative(f)};
  normalize(chain[0]);
  while (degree(chain.back()) > 0) {
    RatPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (degree(r) < 0) break;
    for (auto& c : r) c = -c;
    chain.push_back(r);
  }
  return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
  int last = 0, count = 0;
  for (const auto& p : chain) {
    int s = sign(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int count_roots(const std::vector<RatPoly>& chain, const Rat& lo, const Rat& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval evaluate(const RatPoly& f, const Interval& x) {
  Interval r{Rat(0), Rat(0)};
  for (std::size_t i = f.size(); i-- > 0;) r = r * x + Interval{f[i], f[i]};
  return r;
}

// ---------------------------------------------------------------------------

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw Error(ErrorKind::ZeroElement, "inverse of 0 mod p");
  return powmod(a, p - 2, p);
}

FpPoly::FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& c : c_) c %= p_;
  trim();
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::constant(std::uint64_t p, std::uint64_t c) { return FpPoly(p, {c}); }
FpPoly FpPoly::x(std::uint64_t p) { return FpPoly(p, {0, 1}); }

FpPoly FpPoly::reduce(std::uint64_t p, const RatPoly& f) {
  std::vector<std::uint64_t> c;
  Int pp(static_cast<unsigned long>(p));
  for (const Rat& r : f) {
    Int num = r.get_num() % pp, den = r.get_den() % pp;
    if (num < 0) num += pp;
    if (den == 0) throw Error(ErrorKind::NonUnit, "denominator divisible by " + pp.get_str());
    std::uint64_t n = mpz_get_ui(num.get_mpz_t());
    std::uint64_t d = mpz_get_ui(den.get_mpz_t());
    c.push_back(mulmod(n, invmod(d, p), p));
  }
  return FpPoly(p, std::move(c));
}

FpPoly FpPoly::monic() const {
  if (c_.empty()) return *this;
  std::uint64_t inv = invmod(c_.back(), p_);
  std::vector<std::uint64_t> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mulmod(c_[i], inv, p_);
  return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::derivative() const {
  std::vector<std::uint64_t> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(mulmod(c_[i], i % p_, p_));
  return FpPoly(p_, std::move(c));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % a.p_;
  return FpPoly(a.p_, std::move(c));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + a.p_ - b[i]) % a.p_;
  return FpPoly(a.p_, std::move(c));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
  std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
  return FpPoly(a.p_, std::move(c));
}

bool operator<(const FpPoly& a, const FpPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& g) const {
  if (g.is_zero()) throw Error(ErrorKind::ZeroElement, "F_p polynomial division by zero");
  std::vector<std::uint64_t> rem = c_;
  const int dg = g.degree();
  if (degree() < dg) return {FpPoly(p_, {}), *this};
  std::vector<std::uint64_t> quo(static_cast<std::size_t>(degree() - dg + 1), 0);
  const std::uint64_t inv = invmod(g.lead(), p_);
  for (int i = degree(); i >= dg; --i) {
    std::uint64_t c = mulmod(rem[static_cast<std::size_t>(i)], inv, p_);
    if (c == 0) continue;
    const std::size_t shift = static_cast<std::size_t>(i - dg);
    quo[shift] = c;
    for (int j = 0; j <= dg; ++j) {
      auto& r = rem[shift + static_cast<std::size_t>(j)];
      r = (r + p_ - mulmod(c, g.c_[static_cast<std::size_t>(j)], p_)) % p_;
    }
  }
  return {FpPoly(p_, std::move(quo)), FpPoly(p_, std::move(rem))};
}

RatPoly FpPoly::lift() const {
  RatPoly r;
  for (auto c : c_) r.emplace_back(Int(static_cast<unsigned long>(c)));
  return r;
}

std::string FpPoly::to_string(const std::string& var) const { return format_poly(lift(), var); }

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpPoly invmod(const FpPoly& a, const FpPoly& m) {
  // extended Euclid
  const std::uint64_t p = m.prime();
  FpPoly r0 = m, r1 = a % m, s0(p, {}), s1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    FpPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw Error(ErrorKind::NonUnit, "polynomial not invertible modulo " + m.to_string("t"));
  return (s0 * FpPoly::constant(p, invmod(r0.lead(), p))) % m;
}

FpPoly powmod(const FpPoly& base, const Int& exponent, const FpPoly& m) {
  FpPoly r = FpPoly::constant(m.prime(), 1) % m;
  FpPoly b = base % m;
  const std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = (r * r) % m;
    if (mpz_tstbit(exponent.get_mpz_t(), i)) r = (r * b) % m;
  }
  return r;
}

namespace {

void squarefree_parts(const FpPoly& f, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  const std::uint64_t p = f.prime();
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = f / c;
  int i = 1;
  while (!w.is_one() && w.degree() > 0) {
    FpPoly y = gcd(w, c);
    FpPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * mult);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a polynomial in x^p; over F_p its p-th root has coefficients c_{kp}
    std::vector<std::uint64_t> root;
    for (std::size_t k = 0; k * p < c.coeffs().size(); ++k) root.push_back(c.coeffs()[k * p]);
    squarefree_parts(FpPoly(p, std::move(root)), mult * static_cast<int>(p), out);
  }
}

void equal_degree(const FpPoly& g, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const std::uint64_t p = g.prime();
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  while (true) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(g.degree()));
    for (auto& x : c) x = dist(rng);
    FpPoly a(p, std::move(c));
    if (a.degree() <= 0) continue;
    FpPoly b;
    if (p == 2) {
      FpPoly t = a, term = a;
      for (int i = 1; i < d; ++i) {
        term = (term * term) % g;
        t = t + term;
      }
      b = t;
    } else {
      Int e = (pow(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
      b = powmod(a, e, g) - FpPoly::constant(p, 1);
    }
    FpPoly h = gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroElement, "factor of zero polynomial");
  const std::uint64_t p = f.prime();
  std::vector<std::pair<FpPoly, int>> parts, result;
  if (f.degree() == 0) return result;
  squarefree_parts(f.monic(), 1, parts);
  std::mt19937_64 rng(0x6d6b33ULL + p);
  for (const auto& [g0, mult] : parts) {
    FpPoly g = g0;
    FpPoly h = FpPoly::x(p);
    for (int d = 1; 2 * d <= g.degree(); ++d) {
      h = powmod(h, Int(static_cast<unsigned long>(p)), g);
      FpPoly gd = gcd(h - FpPoly::x(p), g);
      if (gd.degree() > 0) {
        std::vector<FpPoly> pieces;
        equal_degree(gd, d, rng, pieces);
        for (auto& q : pieces) result.emplace_back(q, mult);
        g = g / gd;
        h = h % g;
      }
    }
    if (g.degree() > 0) result.emplace_back(g.monic(), mult);
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return a.first < b.first;
  });
  // merge identical factors that appeared in different squarefree parts
  std::vector<std::pair<FpPoly, int>> merged;
  for (auto& [q, m] : result) {
    if (!merged.empty() && merged.back().first == q)
      merged.back().second += m;
    else
      merged.emplace_back(q, m);
  }
  return merged;
}

}  // namespace mk3
