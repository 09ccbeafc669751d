#include "mk3/numfield.hpp"

#include <algorithm>
#include <set>

#include "mk3/errors.hpp"

namespace mk3 {

struct NumberField::Data {
  RatPoly f;
  int d = 0;
  Int disc;
  std::vector<Interval> roots;
};

namespace {

bool has_integer_root(const RatPoly& f) {
  // monic integer f: rational roots are integers dividing f(0)
  if (f[0] == 0) return true;
  std::vector<Int> divisors{1};
  for (const auto& [p, e] : factor_integer(f[0].get_num())) {
    std::vector<Int> next;
    for (const auto& dv : divisors) {
      Int pk = 1;
      for (int k = 0; k <= e; ++k, pk *= p) next.push_back(dv * pk);
    }
    divisors = std::move(next);
  }
  for (const auto& dv : divisors)
    if (evaluate(f, Rat(dv)) == 0 || evaluate(f, Rat(-dv)) == 0) return true;
  return false;
}

// Degree patterns of f mod good primes: a factorization over Q must have
// a factor degree set that is a subset sum for every such pattern.
bool certify_irreducible(const RatPoly& f, const Int& disc) {
  const int d = degree(f);
  if (d <= 1) return true;
  if (has_integer_root(f)) return false;
  if (d <= 3) return true;
  std::vector<bool> possible(static_cast<std::size_t>(d + 1), true);
  int good = 0;
  for (std::uint64_t p = 3; good < 60 && p < 5000; p += 2) {
    if (!is_probable_prime(Int(static_cast<unsigned long>(p)))) continue;
    if (disc % static_cast<unsigned long>(p) == 0) continue;
    ++good;
    std::vector<bool> sums(static_cast<std::size_t>(d + 1), false);
    sums[0] = true;
    for (const auto& [g, m] : factor(FpPoly::reduce(p, f)))
      for (int k = 0; k < m; ++k)
        for (int s = d; s >= g.degree(); --s)
          if (sums[static_cast<std::size_t>(s - g.degree())]) sums[static_cast<std::size_t>(s)] = true;
    bool only_trivial = true;
    for (int s = 1; s < d; ++s) {
      possible[static_cast<std::size_t>(s)] = possible[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
      if (possible[static_cast<std::size_t>(s)]) only_trivial = false;
    }
    if (only_trivial) return true;
  }
  return false;
}

std::vector<Interval> isolate_real_roots(const RatPoly& f) {
  const int d = degree(f);
  if (d == 1) {
    Rat r = -f[0] / f[1];
    return {Interval{r, r}};
  }
  Rat bound = 1;
  for (int i = 0; i < d; ++i) {
    Rat a = f[static_cast<std::size_t>(i)] < 0 ? Rat(-f[static_cast<std::size_t>(i)]) : f[static_cast<std::size_t>(i)];
    if (a + 1 > bound) bound = a + 1;
  }
  auto chain = sturm_chain(f);
  std::vector<Interval> out;
  std::vector<Interval> work{{-bound, bound}};
  while (!work.empty()) {
    Interval I = work.back();
    work.pop_back();
    int n = count_roots(chain, I.lo, I.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(I);
      continue;
    }
    Rat mid = (I.lo + I.hi) / 2;
    work.push_back({I.lo, mid});
    work.push_back({mid, I.hi});
  }
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return out;
}

// One bisection step keeping a sign change of f (roots are irrational for d >= 2).
Interval bisect(const RatPoly& f, const Interval& I) {
  if (I.lo == I.hi) return I;
  Rat mid = (I.lo + I.hi) / 2;
  Rat fm = evaluate(f, mid);
  if (fm == 0) return {mid, mid};
  if (sign(evaluate(f, I.lo)) * sign(fm) < 0) return {I.lo, mid};
  return {mid, I.hi};
}

// Exact search for a monic integer factor built from a subset of the real
// roots; used when mod-p degree patterns cannot certify irreducibility.
bool has_factor_from_roots(const RatPoly& f, std::vector<Interval> roots) {
  const int d = degree(f);
  std::vector<unsigned> pending;
  for (unsigned mask = 1; mask + 1 < (1u << d); ++mask) {
    int k = __builtin_popcount(mask);
    if (2 * k < d || (2 * k == d && (mask & 1u))) pending.push_back(mask);
  }
  while (!pending.empty()) {
    std::vector<unsigned> next;
    for (unsigned mask : pending) {
      std::vector<Interval> coeffs{{Rat(1), Rat(1)}};
      for (int i = 0; i < d; ++i) {
        if (!(mask & (1u << i))) continue;
        Interval neg{-roots[static_cast<std::size_t>(i)].hi, -roots[static_cast<std::size_t>(i)].lo};
        std::vector<Interval> out(coeffs.size() + 1, Interval{Rat(0), Rat(0)});
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          out[j] = out[j] + coeffs[j] * neg;
          out[j + 1] = out[j + 1] + coeffs[j];
        }
        coeffs = std::move(out);
      }
      bool excluded = false, narrow = true;
      RatPoly candidate;
      for (const auto& c : coeffs) {
        Int lo = c.lo.get_num(), hi = c.hi.get_num();
        mpz_cdiv_q(lo.get_mpz_t(), c.lo.get_num_mpz_t(), c.lo.get_den_mpz_t());
        mpz_fdiv_q(hi.get_mpz_t(), c.hi.get_num_mpz_t(), c.hi.get_den_mpz_t());
        if (lo > hi) {
          excluded = true;
          break;
        }
        if (lo != hi) narrow = false;
        candidate.emplace_back(lo);
      }
      if (excluded) continue;
      if (narrow) {
        if (divmod(f, candidate).second.empty()) return true;
        continue;
      }
      next.push_back(mask);
    }
    pending = std::move(next);
    for (auto& r : roots)
      for (int s = 0; s < 4; ++s) r = bisect(f, r);
  }
  return false;
}

RatPoly to_poly(const FieldElement& x) {
  RatPoly p = x.coeffs();
  normalize(p);
  return p;
}

}  // namespace

std::string PrimeIdeal::to_string() const {
  if (g.degree() == 1 && g[0] == 0) return "(" + p.get_str() + ", t)";
  return "(" + p.get_str() + ", " + g.to_string("t") + ")";
}

NumberField NumberField::define(const std::vector<Int>& coeffs, std::optional<Int> claimed_disc) {
  if (coeffs.size() < 2 || coeffs.back() != 1)
    throw Error(ErrorKind::NotMonic, "minimal polynomial must be monic of degree >= 1");
  auto data = std::make_shared<Data>();
  for (const auto& c : coeffs) data->f.emplace_back(c);
  data->d = mk3::degree(data->f);
  data->disc = poly_discriminant(data->f);
  if (data->disc == 0) throw Error(ErrorKind::NotIrreducible, "polynomial has a repeated root");
  if (data->d > 1 && has_integer_root(data->f))
    throw Error(ErrorKind::NotIrreducible, format_poly(data->f, "x") + " has a rational root");
  data->roots = isolate_real_roots(data->f);
  if (static_cast<int>(data->roots.size()) != data->d)
    throw Error(ErrorKind::NotTotallyReal,
                format_poly(data->f, "x") + " has " + std::to_string(data->roots.size()) + " real roots, degree " +
                    std::to_string(data->d));
  if (!certify_irreducible(data->f, data->disc) && has_factor_from_roots(data->f, data->roots))
    throw Error(ErrorKind::NotIrreducible, format_poly(data->f, "x") + " is reducible over Q");
  if (claimed_disc && *claimed_disc != data->disc)
    throw Error(ErrorKind::Validation,
                "claimed discriminant " + claimed_disc->get_str() + " differs from disc(f) = " + data->disc.get_str());
  NumberField K;
  K.data_ = std::move(data);
  return K;
}

NumberField NumberField::rationals() { return define({Int(-1), Int(1)}); }

int NumberField::degree() const { return data_->d; }
const RatPoly& NumberField::min_poly() const { return data_->f; }
const Int& NumberField::disc() const { return data_->disc; }
const std::vector<Interval>& NumberField::root_intervals() const { return data_->roots; }
std::string NumberField::name() const { return format_poly(data_->f, "x"); }

FieldElement NumberField::element(std::vector<Rat> coeffs) const { return FieldElement(*this, std::move(coeffs)); }
FieldElement NumberField::from_rational(const Rat& r) const { return element({r}); }
FieldElement NumberField::from_poly(const RatPoly& poly) const { return element(poly); }
FieldElement NumberField::zero() const { return element({}); }
FieldElement NumberField::one() const { return element({Rat(1)}); }
FieldElement NumberField::theta() const {
  if (data_->d == 1) return from_rational(-data_->f[0]);
  return element({Rat(0), Rat(1)});
}

bool operator==(const NumberField& a, const NumberField& b) {
  if (a.data_ == b.data_) return true;
  if (!a.data_ || !b.data_) return false;
  return a.data_->f == b.data_->f;
}

std::vector<PrimeIdeal> NumberField::factor_prime(const Int& p) const {
  if (!is_probable_prime(p)) throw Error(ErrorKind::Validation, p.get_str() + " is not prime");
  const std::uint64_t pp = to_u64(p);
  FpPoly fbar = FpPoly::reduce(pp, data_->f);
  std::vector<PrimeIdeal> out;
  int total = 0;
  for (const auto& [g, e] : factor(fbar)) {
    PrimeIdeal P;
    P.p = p;
    P.g = g;
    P.e = e;
    P.f = g.degree();
    P.anti_uniformizer_num = (fbar / g).lift();
    out.push_back(std::move(P));
    total += e * g.degree();
  }
  if (total != data_->d) throw Error(ErrorKind::MismatchDetected, "sum of e*f differs from the degree");
  // Dedekind criterion: the splitting above is only valid when Z[theta] is p-maximal
  if (std::any_of(out.begin(), out.end(), [](const PrimeIdeal& P) { return P.e > 1; })) {
    RatPoly G{Rat(1)};
    for (const auto& P : out)
      for (int k = 0; k < P.e; ++k) G = G * P.g.lift();
    RatPoly F = data_->f - G;
    for (auto& c : F) c /= Rat(p);
    normalize(F);
    FpPoly Fbar = FpPoly::reduce(pp, F);
    for (const auto& P : out)
      if (P.e > 1 && (Fbar % P.g).is_zero())
        throw Error(ErrorKind::Validation, "Z[theta] is not " + p.get_str() + "-maximal for " + name() +
                                               "; the ring of integers must be Z[theta]");
  }
  return out;
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(NumberField field, std::vector<Rat> coeffs) : field_(std::move(field)) {
  const RatPoly& f = field_.min_poly();
  const int d = field_.degree();
  RatPoly p = std::move(coeffs);
  for (auto& c : p) c.canonicalize();
  normalize(p);
  if (degree(p) >= d) p = divmod(p, f).second;
  if (d == 1 && !p.empty()) {
    // Q[x]/(x - r): evaluate at the root
    p = RatPoly{evaluate(p, -f[0])};
  }
  p.resize(static_cast<std::size_t>(d), Rat(0));
  c_ = std::move(p);
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
}

bool FieldElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& r) { return r == 0; });
}

bool FieldElement::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return mk3::is_integral(r); });
}

Int FieldElement::denominator() const {
  Int l = 1;
  for (const auto& r : c_) l = lcm(l, r.get_den());
  return l;
}

namespace {
void check_same(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "elements of different fields");
}
}  // namespace

FieldElement FieldElement::operator-() const {
  std::vector<Rat> c = c_;
  for (auto& r : c) r = -r;
  return FieldElement(field_, std::move(c));
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  std::vector<Rat> c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  std::vector<Rat> c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same(a, b);
  return FieldElement(a.field_, a.c_ * b.c_);
}

FieldElement operator*(const Rat& r, const FieldElement& a) {
  std::vector<Rat> c = a.c_;
  for (auto& x : c) x *= r;
  return FieldElement(a.field_, std::move(c));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

FieldElement FieldElement::pow(unsigned n) const {
  FieldElement r = field_.one(), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ZeroElement, "inverse of zero");
  RatMatrix inv = mk3::inverse(multiplication_matrix(*this));
  // y * M = e_0  =>  y = e_0 * M^{-1}
  std::vector<Rat> y(c_.size());
  for (std::size_t j = 0; j < c_.size(); ++j) y[j] = inv(0, j);
  return FieldElement(field_, std::move(y));
}

bool operator==(const FieldElement& a, const FieldElement& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

std::string FieldElement::to_string(const std::string& var) const { return format_poly(to_poly(*this), var); }

RatMatrix multiplication_matrix(const FieldElement& x) {
  const NumberField& K = x.field();
  const std::size_t d = static_cast<std::size_t>(K.degree());
  RatMatrix m(d, d, Rat(0));
  FieldElement row = x;
  const FieldElement t = K.theta();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m(i, j) = row[j];
    row = row * t;
  }
  return m;
}

Rat trace(const FieldElement& x) {
  RatMatrix m = multiplication_matrix(x);
  Rat t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

Rat norm(const FieldElement& x) { return det(multiplication_matrix(x)); }

RatMatrix trace_form_gram(const NumberField& K) {
  const std::size_t d = static_cast<std::size_t>(K.degree());
  RatMatrix g(d, d, Rat(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = trace(K.theta().pow(static_cast<unsigned>(i + j)));
  return g;
}

Int poly_discriminant(const RatPoly& monic_f) {
  const RatPoly fp = derivative(monic_f);
  const int n = degree(monic_f), m = degree(fp);
  if (n == 1) return 1;
  const std::size_t size = static_cast<std::size_t>(n + m);
  RatMatrix syl(size, size, Rat(0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k)
      syl(static_cast<std::size_t>(i), static_cast<std::size_t>(i + k)) = monic_f[static_cast<std::size_t>(n - k)];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k)
      syl(static_cast<std::size_t>(m + i), static_cast<std::size_t>(i + k)) = fp[static_cast<std::size_t>(m - k)];
  Rat res = det(syl);
  if ((n * (n - 1) / 2) % 2) res = -res;
  return res.get_num();
}

int sign_at(const FieldElement& x, int place) {
  const NumberField& K = x.field();
  if (place < 1 || place > K.degree()) throw Error(ErrorKind::Validation, "place index out of range");
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "sign of zero");
  if (x.is_rational()) return sign(x[0]);
  const RatPoly p = to_poly(x);
  Interval root = K.root_intervals()[static_cast<std::size_t>(place - 1)];
  while (true) {
    Interval v = evaluate(p, root);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    root = bisect(K.min_poly(), root);
  }
}

Interval embed(const FieldElement& x, int place, int bisections) {
  const NumberField& K = x.field();
  if (place < 1 || place > K.degree()) throw Error(ErrorKind::Validation, "place index out of range");
  Interval root = K.root_intervals()[static_cast<std::size_t>(place - 1)];
  for (int i = 0; i < bisections; ++i) root = bisect(K.min_poly(), root);
  return evaluate(to_poly(x), root);
}

namespace {

FieldElement anti_uniformizer(const NumberField& K, const PrimeIdeal& P) {
  return make_rat(1, P.p) * K.from_poly(P.anti_uniformizer_num);
}

int integral_valuation(FieldElement y, const PrimeIdeal& P, const FieldElement& tau) {
  if (valuation(norm(y), P.p) == 0) return 0;
  int v = 0;
  while (true) {
    FieldElement next = y * tau;
    if (!next.is_integral()) return v;
    y = std::move(next);
    ++v;
  }
}

}  // namespace

int valuation(const FieldElement& x, const PrimeIdeal& P) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "valuation of zero");
  const NumberField& K = x.field();
  const Int m = x.denominator();
  const FieldElement y = Rat(m) * x;
  return integral_valuation(y, P, anti_uniformizer(K, P)) - P.e * valuation(m, P.p);
}

FpPoly residue(const FieldElement& x, const PrimeIdeal& P) {
  if (x.is_zero() || valuation(x, P) != 0) throw Error(ErrorKind::NonUnit, "element is not a unit at " + P.to_string());
  const NumberField& K = x.field();
  const Int m = x.denominator();
  const int k = P.e * valuation(m, P.p);
  const FieldElement tau_k = anti_uniformizer(K, P).pow(static_cast<unsigned>(k));
  const FieldElement num = (Rat(m) * x) * tau_k;
  const FieldElement den = K.from_rational(Rat(m)) * tau_k;
  const std::uint64_t p = to_u64(P.p);
  FpPoly a = FpPoly::reduce(p, num.coeffs()) % P.g;
  FpPoly b = FpPoly::reduce(p, den.coeffs()) % P.g;
  return (a * invmod(b, P.g)) % P.g;
}

bool is_square_in_residue_field(const FieldElement& x, const PrimeIdeal& P) {
  if (P.is_dyadic()) throw Error(ErrorKind::DyadicPrime, "residue symbol at a dyadic prime");
  FpPoly r = residue(x, P);
  Int q = pow(P.p, static_cast<unsigned long>(P.f));
  return powmod(r, Int((q - 1) / 2), P.g).is_one();
}

// ---------------------------------------------------------------------------

Ideal Ideal::from_generators(const NumberField& K, const std::vector<FieldElement>& gens) {
  const std::size_t d = static_cast<std::size_t>(K.degree());
  IntMatrix rows(gens.size() * d, d, Int(0));
  std::size_t r = 0;
  for (const auto& g : gens) {
    if (!g.is_integral()) throw Error(ErrorKind::Validation, "ideal generator " + g.to_string() + " is not integral");
    FieldElement t = g;
    for (std::size_t j = 0; j < d; ++j, ++r) {
      for (std::size_t c = 0; c < d; ++c) rows(r, c) = t[c].get_num();
      t = t * K.theta();
    }
  }
  IntMatrix h = hnf_rows(rows);
  if (h.rows() != d) throw Error(ErrorKind::ZeroElement, "zero ideal");
  return Ideal(K, std::move(h));
}

Ideal Ideal::unit(const NumberField& K) { return from_generators(K, {K.one()}); }

Ideal Ideal::principal(const FieldElement& x) {
  if (x.is_zero()) throw Error(ErrorKind::ZeroElement, "principal ideal of zero");
  return from_generators(x.field(), {x});
}

Ideal Ideal::of_prime(const NumberField& K, const PrimeIdeal& P) {
  return from_generators(K, {K.from_rational(Rat(P.p)), K.from_poly(P.g.lift())});
}

Int Ideal::norm() const {
  Int n = 1;
  for (std::size_t i = 0; i < hnf_.rows(); ++i) n *= hnf_(i, i);
  return n;
}

bool Ideal::is_unit() const { return norm() == 1; }

bool Ideal::contains(const FieldElement& x) const {
  if (!x.is_integral()) return false;
  const std::size_t d = hnf_.rows();
  std::vector<Int> v(d);
  for (std::size_t j = 0; j < d; ++j) v[j] = x[j].get_num();
  // c * H = v with H upper triangular: forward substitution over columns
  for (std::size_t j = 0; j < d; ++j) {
    if (!mpz_divisible_p(v[j].get_mpz_t(), hnf_(j, j).get_mpz_t())) return false;
    Int c = v[j] / hnf_(j, j);
    for (std::size_t k = j; k < d; ++k) v[k] -= c * hnf_(j, k);
  }
  return true;
}

Ideal Ideal::pow(unsigned n) const {
  Ideal r = unit(field_);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

Ideal operator*(const Ideal& a, const Ideal& b) {
  if (a.field_ != b.field_) throw Error(ErrorKind::FieldMismatch, "ideals of different fields");
  const NumberField& K = a.field_;
  const std::size_t d = a.hnf_.rows();
  std::vector<FieldElement> gens;
  auto elem = [&](const IntMatrix& h, std::size_t i) {
    std::vector<Rat> c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = Rat(h(i, j));
    return K.element(std::move(c));
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) gens.push_back(elem(a.hnf_, i) * elem(b.hnf_, j));
  return Ideal::from_generators(K, gens);
}

std::optional<FieldElement> Ideal::find_generator() const {
  const NumberField& K = field_;
  const std::size_t d = hnf_.rows();
  const Int n = norm();
  if (n == 1) return K.one();
  const int range = 3;
  std::vector<int> c(d, -range);
  std::optional<FieldElement> best;
  while (true) {
    std::vector<Rat> v(d, Rat(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) v[j] += c[i] * Rat(hnf_(i, j));
    FieldElement x = K.element(v);
    if (!best && !x.is_zero() && abs(mk3::norm(x).get_num()) == n) best = x;
    std::size_t k = 0;
    while (k < d && ++c[k] > range) c[k++] = -range;
    if (k == d) break;
  }
  if (best && best->is_rational() && sign((*best)[0]) < 0) best = -*best;
  return best;
}

std::string Ideal::to_string(const std::string& var) const {
  if (auto g = find_generator()) return "(" + g->to_string(var) + ")";
  std::string s = "<";
  for (std::size_t i = 0; i < hnf_.rows(); ++i) {
    if (i) s += ", ";
    std::vector<Rat> c(hnf_.cols());
    for (std::size_t j = 0; j < hnf_.cols(); ++j) c[j] = Rat(hnf_(i, j));
    s += field_.element(c).to_string(var);
  }
  return s + ">";
}

}  // namespace mk3
