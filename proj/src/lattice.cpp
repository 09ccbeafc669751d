#include "mk3/lattice.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "mk3/errors.hpp"

namespace mk3 {

IntLattice::IntLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric()) throw Error(ErrorKind::Validation, "Gram matrix must be square and symmetric");
}

Int IntLattice::det() const { return mk3::det(gram_); }
Inertia IntLattice::signature() const { return inertia(gram_); }

bool IntLattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (!mpz_even_p(gram_(i, i).get_mpz_t())) return false;
  return true;
}

SmithForm IntLattice::snf() const {
  SmithForm s = smith_normal_form(gram_);
  if (!(s.left * gram_ * s.right == s.diagonal))
    throw Error(ErrorKind::MismatchDetected, "Smith form transformation check failed");
  return s;
}

std::vector<Int> IntLattice::disc_group() const {
  SmithForm s = snf();
  std::vector<Int> out;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (s.diagonal(i, i) == 0) throw Error(ErrorKind::Degenerate, "lattice is degenerate");
    if (s.diagonal(i, i) != 1) out.push_back(s.diagonal(i, i));
  }
  return out;
}

IntLattice direct_sum(const IntLattice& a, const IntLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m, Int(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  return IntLattice(std::move(g));
}

// ---------------------------------------------------------------------------

Rat mod2(const Rat& x) {
  Rat r = x;
  Int k;
  Rat half = x / 2;
  mpz_fdiv_q(k.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
  r -= 2 * Rat(k);
  return r;
}

Rat mod1(const Rat& x) {
  Int k;
  mpz_fdiv_q(k.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rat(k);
}

Int DiscForm::order() const {
  Int n = 1;
  for (const auto& d : factors) n *= d;
  return n;
}

Rat DiscForm::q_value(const std::vector<Int>& c) const {
  Rat s = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    s += Rat(c[i] * c[i]) * q[i];
    for (std::size_t j = i + 1; j < factors.size(); ++j) s += 2 * Rat(c[i] * c[j]) * b(i, j);
  }
  return mod2(s);
}

Rat DiscForm::b_value(const std::vector<Int>& x, const std::vector<Int>& y) const {
  Rat s = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (std::size_t j = 0; j < factors.size(); ++j) s += Rat(x[i] * y[j]) * b(i, j);
  return mod1(s);
}

namespace {

Rat bilinear(const IntMatrix& g, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  Rat s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) row += Rat(g(i, j)) * y[j];
    s += x[i] * row;
  }
  return s;
}

}  // namespace

DiscForm disc_form(const IntLattice& L) {
  if (!L.is_even()) throw Error(ErrorKind::OddLattice, "discriminant form needs an even lattice");
  SmithForm s = L.snf();
  const std::size_t n = L.rank();
  DiscForm F;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& d = s.diagonal(i, i);
    if (d == 0) throw Error(ErrorKind::Degenerate, "lattice is degenerate");
    if (d == 1) continue;
    std::vector<Rat> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = make_rat(s.right(k, i), d);
    F.factors.push_back(d);
    F.gens.push_back(std::move(x));
  }
  const std::size_t m = F.factors.size();
  F.b = RatMatrix(m, m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) {
    F.q.push_back(mod2(bilinear(L.gram(), F.gens[i], F.gens[i])));
    for (std::size_t j = 0; j < m; ++j) F.b(i, j) = mod1(bilinear(L.gram(), F.gens[i], F.gens[j]));
  }
  return F;
}

DiscForm negate(const DiscForm& F) {
  DiscForm G = F;
  for (auto& v : G.q) v = mod2(-v);
  for (std::size_t i = 0; i < G.b.rows(); ++i)
    for (std::size_t j = 0; j < G.b.cols(); ++j) G.b(i, j) = mod1(-G.b(i, j));
  return G;
}

DiscForm direct_sum(const DiscForm& a, const DiscForm& b) {
  DiscForm s;
  const std::size_t na = a.factors.size(), nb = b.factors.size();
  const std::size_t la = a.gens.empty() ? 0 : a.gens[0].size();
  const std::size_t lb = b.gens.empty() ? 0 : b.gens[0].size();
  for (std::size_t i = 0; i < na; ++i) {
    s.factors.push_back(a.factors[i]);
    auto g = a.gens[i];
    g.resize(la + lb, Rat(0));
    s.gens.push_back(std::move(g));
    s.q.push_back(a.q[i]);
  }
  for (std::size_t i = 0; i < nb; ++i) {
    s.factors.push_back(b.factors[i]);
    std::vector<Rat> g(la, Rat(0));
    g.insert(g.end(), b.gens[i].begin(), b.gens[i].end());
    s.gens.push_back(std::move(g));
    s.q.push_back(b.q[i]);
  }
  s.b = RatMatrix(na + nb, na + nb, Rat(0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) s.b(i, j) = a.b(i, j);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) s.b(na + i, na + j) = b.b(i, j);
  return s;
}

LengthInfo length(const std::vector<Int>& factors) {
  std::map<Int, int> count;
  for (const auto& d : factors)
    for (const auto& [p, e] : factor_integer(d)) ++count[p];
  LengthInfo info;
  for (const auto& [p, l] : count) {
    info.per_prime.emplace_back(p, l);
    info.lambda = std::max(info.lambda, l);
  }
  return info;
}

std::vector<Int> elementary_divisors(const std::vector<Int>& factors) {
  std::vector<std::pair<Int, int>> parts;
  for (const auto& d : factors)
    for (const auto& [p, e] : factor_integer(d)) parts.emplace_back(p, e);
  std::sort(parts.begin(), parts.end());
  std::vector<Int> out;
  for (const auto& [p, e] : parts) out.push_back(pow(p, static_cast<unsigned long>(e)));
  return out;
}

// ---------------------------------------------------------------------------

ADEConfig ADEConfig::parse(const std::string& text) {
  ADEConfig cfg;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_') s.push_back(c);
  std::size_t pos = 0;
  auto fail = [&]() { throw Error(ErrorKind::UnknownSymbol, "cannot parse ADE configuration '" + text + "'"); };
  if (s.empty()) fail();
  while (pos < s.size()) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    int mult = pos > start ? std::stoi(s.substr(start, pos - start)) : 1;
    if (pos >= s.size()) fail();
    char type = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos++])));
    start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail();
    int n = std::stoi(s.substr(start, pos - start));
    bool ok = (type == 'A' && n >= 1) || (type == 'D' && n >= 4) || (type == 'E' && n >= 6 && n <= 8);
    if (!ok || mult < 1) fail();
    cfg.components.push_back({type, n, mult});
    if (pos < s.size()) {
      if (s[pos] != '+') fail();
      ++pos;
      if (pos == s.size()) fail();
    }
  }
  return cfg;
}

std::string ADEConfig::to_string() const {
  std::string out;
  for (const auto& c : components) {
    if (!out.empty()) out += "+";
    if (c.multiplicity > 1) out += std::to_string(c.multiplicity);
    out += c.type;
    out += std::to_string(c.n);
  }
  return out;
}

int ADEConfig::rank() const {
  int r = 0;
  for (const auto& c : components) r += c.n * c.multiplicity;
  return r;
}

IntMatrix cartan_matrix(char type, int n) {
  const std::size_t N = static_cast<std::size_t>(n);
  IntMatrix m(N, N, Int(0));
  for (std::size_t i = 0; i < N; ++i) m(i, i) = 2;
  auto link = [&](std::size_t i, std::size_t j) { m(i, j) = m(j, i) = -1; };
  switch (type) {
    case 'A':
      for (std::size_t i = 0; i + 1 < N; ++i) link(i, i + 1);
      break;
    case 'D':
      if (n < 4) throw Error(ErrorKind::UnknownSymbol, "D_n needs n >= 4");
      for (std::size_t i = 0; i + 2 < N; ++i) link(i, i + 1);
      link(N - 3, N - 1);
      break;
    case 'E':
      if (n < 6 || n > 8) throw Error(ErrorKind::UnknownSymbol, "E_n needs 6 <= n <= 8");
      for (std::size_t i = 0; i + 2 < N; ++i) link(i, i + 1);
      link(2, N - 1);
      break;
    default:
      throw Error(ErrorKind::UnknownSymbol, std::string("unknown root system type ") + type);
  }
  return m;
}

IntLattice ade_lattice(const ADEConfig& config, Sign sign) {
  const std::size_t r = static_cast<std::size_t>(config.rank());
  IntMatrix g(r, r, Int(0));
  std::size_t off = 0;
  for (const auto& c : config.components)
    for (int k = 0; k < c.multiplicity; ++k) {
      IntMatrix block = cartan_matrix(c.type, c.n);
      for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
          g(off + i, off + j) = sign == Sign::Negative ? Int(-block(i, j)) : block(i, j);
      off += block.rows();
    }
  return IntLattice(std::move(g));
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) throw Error(ErrorKind::CapExceeded, "value " + x.get_str() + " exceeds machine range");
  return x.get_si();
}

std::int64_t pos_mod(__int128 x, std::int64_t m) {
  __int128 r = x % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace

FiniteQuadraticModule::FiniteQuadraticModule(const DiscForm& F, std::uint64_t cap) {
  if (F.order() > Int(static_cast<unsigned long>(cap)))
    throw Error(ErrorKind::CapExceeded, "group of order " + F.order().get_str() + " exceeds enumeration cap " +
                                            std::to_string(cap));
  for (const auto& d : F.factors) {
    factors_.push_back(to_i64(d));
    radix_.push_back(size_);
    size_ *= static_cast<std::uint64_t>(factors_.back());
    modulus_ = std::lcm(modulus_, factors_.back());
  }
  const Int M(static_cast<long>(modulus_));
  auto numerator = [&](const Rat& v) {
    Rat t = v * Rat(M);
    if (!is_integral(t)) throw Error(ErrorKind::MismatchDetected, "discriminant value outside (1/M)Z");
    return to_i64(t.get_num());
  };
  const std::size_t n = factors_.size();
  b_.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    q_.push_back(numerator(F.q[i]));
    for (std::size_t j = 0; j < n; ++j) b_[i][j] = numerator(F.b(i, j));
  }
}

std::vector<std::int64_t> FiniteQuadraticModule::decode(std::uint64_t code) const {
  std::vector<std::int64_t> c(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    c[i] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(factors_[i]));
    code /= static_cast<std::uint64_t>(factors_[i]);
  }
  return c;
}

std::uint64_t FiniteQuadraticModule::encode(const std::vector<std::int64_t>& c) const {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    code += static_cast<std::uint64_t>(pos_mod(c[i], factors_[i])) * radix_[i];
  return code;
}

std::uint64_t FiniteQuadraticModule::add(std::uint64_t x, std::uint64_t y) const {
  auto a = decode(x), b = decode(y);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return encode(a);
}

std::uint64_t FiniteQuadraticModule::scale(std::uint64_t x, std::int64_t k) const {
  auto a = decode(x);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = pos_mod(static_cast<__int128>(a[i]) * k, factors_[i]);
  return encode(a);
}

std::int64_t FiniteQuadraticModule::q_num(std::uint64_t code) const {
  const auto c = decode(code);
  const std::int64_t two_m = 2 * modulus_;
  __int128 s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    s += static_cast<__int128>(c[i]) * c[i] % two_m * q_[i];
    s %= two_m;
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      s += 2 * (static_cast<__int128>(c[i]) * c[j] % two_m) * b_[i][j];
      s %= two_m;
    }
  }
  return pos_mod(s, two_m);
}

std::int64_t FiniteQuadraticModule::b_num(std::uint64_t x, std::uint64_t y) const {
  const auto a = decode(x), c = decode(y);
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      s += static_cast<__int128>(a[i]) * c[j] % modulus_ * b_[i][j];
      s %= modulus_;
    }
  }
  return pos_mod(s, modulus_);
}

std::int64_t FiniteQuadraticModule::element_order(std::uint64_t code) const {
  const auto c = decode(code);
  std::int64_t o = 1;
  for (std::size_t i = 0; i < c.size(); ++i) o = std::lcm(o, factors_[i] / std::gcd(c[i], factors_[i]));
  return o;
}

std::vector<std::uint64_t> FiniteQuadraticModule::span(const std::vector<std::uint64_t>& gens) const {
  std::vector<std::uint64_t> s{0};
  for (auto g : gens) {
    const std::int64_t ord = element_order(g);
    std::vector<std::uint64_t> next;
    next.reserve(s.size() * static_cast<std::size_t>(ord));
    std::uint64_t mult = 0;
    for (std::int64_t k = 0; k < ord; ++k) {
      for (auto x : s) next.push_back(add(x, mult));
      mult = add(mult, g);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    s = std::move(next);
  }
  return s;
}

std::vector<std::uint64_t> isotropic_elements_serial(const FiniteQuadraticModule& A) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 1; x < A.size(); ++x)
    if (A.q_num(x) == 0) out.push_back(x);
  return out;
}

std::vector<std::uint64_t> isotropic_elements(const FiniteQuadraticModule& A) {
  const std::int64_t n = static_cast<std::int64_t>(A.size());
  std::vector<char> hit(A.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 1; x < n; ++x) hit[static_cast<std::size_t>(x)] = A.q_num(static_cast<std::uint64_t>(x)) == 0;
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 1; x < A.size(); ++x)
    if (hit[x]) out.push_back(x);
  return out;
}

std::vector<Subgroup> isotropic_subgroups(const DiscForm& F, std::size_t max_order, std::uint64_t cap) {
  FiniteQuadraticModule A(F, cap);
  const auto iso = isotropic_elements(A);
  const std::uint64_t pairs = iso.size() * (iso.size() > 0 ? iso.size() - 1 : 0) / 2;
  if (pairs > cap)
    throw Error(ErrorKind::CapExceeded, std::to_string(pairs) + " isotropic pairs exceed cap " + std::to_string(cap));

  auto as_int = [&](std::uint64_t code) {
    std::vector<Int> v;
    for (auto c : A.decode(code)) v.emplace_back(static_cast<long>(c));
    return v;
  };

  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Subgroup> out;
  auto offer = [&](std::vector<std::uint64_t> elems, std::vector<std::vector<Int>> gens) {
    if (elems.size() > max_order) return;
    if (!seen.insert(elems).second) return;
    out.push_back({std::move(gens), std::move(elems)});
  };
  offer({0}, {});
  std::vector<std::vector<std::uint64_t>> cyclic(iso.size());
  for (std::size_t i = 0; i < iso.size(); ++i) {
    cyclic[i] = A.span({iso[i]});
    offer(cyclic[i], {as_int(iso[i])});
  }
  for (std::size_t i = 0; i < iso.size(); ++i) {
    if (cyclic[i].size() >= max_order) continue;
    for (std::size_t j = i + 1; j < iso.size(); ++j) {
      if (A.b_num(iso[i], iso[j]) != 0) continue;
      if (std::binary_search(cyclic[i].begin(), cyclic[i].end(), iso[j])) continue;
      if (cyclic[i].size() * cyclic[j].size() > max_order * cyclic[i].size() &&
          cyclic[j].size() > max_order)
        continue;
      offer(A.span({iso[i], iso[j]}), {as_int(iso[i]), as_int(iso[j])});
    }
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  return out;
}

IntLattice even_overlattice(const IntLattice& L, const DiscForm& F,
                            const std::vector<std::vector<Int>>& h_generators) {
  const std::size_t n = L.rank();
  // isotropy of H: q on generators, b pairwise
  for (std::size_t i = 0; i < h_generators.size(); ++i) {
    if (F.q_value(h_generators[i]) != 0)
      throw Error(ErrorKind::NotIsotropic, "generator " + std::to_string(i) + " has q != 0 mod 2Z");
    for (std::size_t j = i + 1; j < h_generators.size(); ++j)
      if (F.b_value(h_generators[i], h_generators[j]) != 0)
        throw Error(ErrorKind::NotIsotropic, "generators are not orthogonal mod Z");
  }
  std::vector<std::vector<Rat>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> e(n, Rat(0));
    e[i] = 1;
    rows.push_back(std::move(e));
  }
  for (const auto& c : h_generators) {
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t k = 0; k < F.gens.size(); ++k)
      for (std::size_t j = 0; j < n; ++j) x[j] += Rat(c[k]) * F.gens[k][j];
    rows.push_back(std::move(x));
  }
  Int den = 1;
  for (const auto& r : rows)
    for (const auto& v : r) den = lcm(den, v.get_den());
  IntMatrix scaled(rows.size(), n, Int(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = Rat(rows[i][j] * Rat(den)).get_num();
  IntMatrix h = hnf_rows(scaled);
  RatMatrix basis(n, n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = make_rat(h(i, j), den);
  RatMatrix g = basis * to_rational(L.gram()) * basis.transpose();
  IntLattice over(to_integer(g));
  if (!over.is_even()) throw Error(ErrorKind::NotIsotropic, "overlattice is not even");

  // index law |A_L| = |H|^2 |A_L'|
  std::uint64_t hsize = 1;
  {
    FiniteQuadraticModule A(F, std::numeric_limits<std::uint64_t>::max() / 4);
    std::vector<std::uint64_t> codes;
    for (const auto& c : h_generators) {
      std::vector<std::int64_t> v;
      for (const auto& x : c) v.push_back(x.get_si());
      codes.push_back(A.encode(v));
    }
    hsize = A.span(codes).size();
  }
  const Int lhs = abs(L.det());
  const Int rhs = Int(static_cast<unsigned long>(hsize)) * Int(static_cast<unsigned long>(hsize)) * abs(over.det());
  if (lhs != rhs)
    throw Error(ErrorKind::MismatchDetected, "index law fails: |A_L| = " + lhs.get_str() + ", |H|^2 |A_L'| = " + rhs.get_str());
  return over;
}

// ---------------------------------------------------------------------------

std::optional<bool> disc_forms_isomorphic(const DiscForm& a, const DiscForm& b, std::uint64_t work_cap) {
  // the generators may present the same group differently (Z/6 vs Z/2 + Z/3)
  if (elementary_divisors(a.factors) != elementary_divisors(b.factors)) return false;
  if (a.order() == 1) return true;
  const std::uint64_t enum_cap = 1000000;
  if (a.order() > Int(static_cast<unsigned long>(enum_cap))) return std::nullopt;
  FiniteQuadraticModule A(a, enum_cap), B(b, enum_cap);
  const std::size_t n = A.ngens();

  std::vector<std::uint64_t> gen_codes(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(n, 0);
    e[i] = 1;
    gen_codes[i] = A.encode(e);
  }
  // candidate images per generator: order divides d_i, same q
  std::vector<std::vector<std::uint64_t>> pool(n);
  for (std::uint64_t y = 0; y < B.size(); ++y) {
    const std::int64_t ord = B.element_order(y);
    const std::int64_t qy = B.q_num(y);
    for (std::size_t i = 0; i < n; ++i)
      if (A.factors()[i] % ord == 0 && qy == A.q_num(gen_codes[i])) pool[i].push_back(y);
  }

  std::vector<std::uint64_t> image(n);
  std::uint64_t work = 0;
  bool exhausted = false;
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return B.span(image).size() == B.size();
    for (auto y : pool[i]) {
      if (++work > work_cap) {
        exhausted = true;
        return false;
      }
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = B.b_num(y, image[k]) == A.b_num(gen_codes[i], gen_codes[k]);
      if (!ok) continue;
      image[i] = y;
      if (self(self, i + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };
  if (search(search, 0)) return true;
  if (exhausted) return std::nullopt;
  return false;
}

std::string to_string(Rank3Result::Status s) {
  switch (s) {
    case Rank3Result::Status::Yes: return "yes";
    case Rank3Result::Status::No: return "no";
    default: return "unknown";
  }
}

namespace {

struct Rank3Space {
  int bound;
  std::vector<std::int64_t> diag;  // admissible diagonal values
  std::vector<std::int64_t> off;   // off-diagonal values
  std::uint64_t size() const {
    const std::uint64_t d = diag.size(), o = off.size();
    return d * d * d * o * o * o;
  }
  std::array<std::int64_t, 6> at(std::uint64_t idx) const {
    std::array<std::int64_t, 6> v{};
    // lexicographic in (g00, g11, g22, g01, g02, g12), last varies fastest
    for (int k = 5; k >= 0; --k) {
      const auto& range = k < 3 ? diag : off;
      v[static_cast<std::size_t>(k)] = range[idx % range.size()];
      idx /= range.size();
    }
    return v;
  }
};

Rank3Space make_space(int bound, int positive, int negative) {
  Rank3Space s{bound, {}, {}};
  for (std::int64_t v = -bound; v <= bound; ++v) {
    if (v % 2 == 0 && v != 0) {
      if (positive == 3 && v < 0) continue;
      if (negative == 3 && v > 0) continue;
      s.diag.push_back(v);
    } else if (v == 0 && positive != 3 && negative != 3) {
      s.diag.push_back(v);
    }
    s.off.push_back(v);
  }
  return s;
}

IntMatrix gram_of(const std::array<std::int64_t, 6>& v) {
  IntMatrix g(3, 3, Int(0));
  g(0, 0) = Int(static_cast<long>(v[0]));
  g(1, 1) = Int(static_cast<long>(v[1]));
  g(2, 2) = Int(static_cast<long>(v[2]));
  g(0, 1) = g(1, 0) = Int(static_cast<long>(v[3]));
  g(0, 2) = g(2, 0) = Int(static_cast<long>(v[4]));
  g(1, 2) = g(2, 1) = Int(static_cast<long>(v[5]));
  return g;
}

enum class Verdict { Match, NoMatch, Undecided };

Verdict check_candidate(const std::array<std::int64_t, 6>& v, const DiscForm& F, std::int64_t target_det, int positive,
                        int negative) {
  const std::int64_t a = v[0], b = v[1], c = v[2], d = v[3], e = v[4], f = v[5];
  const std::int64_t det3 = a * (b * c - f * f) - d * (d * c - f * e) + e * (d * f - b * e);
  if (det3 != target_det) return Verdict::NoMatch;
  IntLattice L(gram_of(v));
  Inertia s = L.signature();
  if (s.positive != positive || s.negative != negative) return Verdict::NoMatch;
  if (elementary_divisors(L.disc_group()) != elementary_divisors(F.factors)) return Verdict::NoMatch;
  auto iso = disc_forms_isomorphic(disc_form(L), F, 200000);
  if (!iso) return Verdict::Undecided;
  return *iso ? Verdict::Match : Verdict::NoMatch;
}

Rank3Result finish(const Rank3Space& space, std::uint64_t best, bool undecided, bool timed_out, std::uint64_t checked) {
  Rank3Result r;
  r.candidates = checked;
  r.timed_out = timed_out;
  if (best < space.size()) {
    r.status = Rank3Result::Status::Yes;
    r.witness = gram_of(space.at(best));
    r.reason = "witness found within bound " + std::to_string(space.bound);
    return r;
  }
  r.status = Rank3Result::Status::Unknown;
  if (timed_out)
    r.reason = "wall-clock cap reached before the bound was exhausted";
  else if (undecided)
    r.reason = "isomorphism test inconclusive for some candidate";
  else
    r.reason = "no witness with |entries| <= " + std::to_string(space.bound);
  return r;
}

std::optional<Rank3Result> precheck(const DiscForm& F, int positive, int negative) {
  if (positive < 0 || negative < 0 || positive + negative != 3)
    throw Error(ErrorKind::Validation, "signature must satisfy p + q = 3");
  LengthInfo len = length(F);
  if (len.lambda > 3) {
    Rank3Result r;
    r.status = Rank3Result::Status::No;
    r.reason = "length obstruction: lambda = " + std::to_string(len.lambda) + " > 3";
    return r;
  }
  if (!F.order().fits_slong_p()) {
    Rank3Result r;
    r.reason = "group order too large for the search";
    return r;
  }
  return std::nullopt;
}

}  // namespace

Rank3Result rank3_realizable_serial(const DiscForm& F, int positive, int negative, const Rank3Options& options) {
  if (auto r = precheck(F, positive, negative)) return *r;
  const Rank3Space space = make_space(options.bound, positive, negative);
  const std::int64_t target = (negative % 2 ? -1 : 1) * F.order().get_si();
  const auto deadline = std::chrono::steady_clock::now() + options.time_cap;
  bool undecided = false, timed_out = false;
  std::uint64_t checked = 0;
  for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
    if ((idx & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
      timed_out = true;
      break;
    }
    ++checked;
    Verdict v = check_candidate(space.at(idx), F, target, positive, negative);
    if (v == Verdict::Match) return finish(space, idx, undecided, false, checked);
    if (v == Verdict::Undecided) undecided = true;
  }
  return finish(space, space.size(), undecided, timed_out, checked);
}

Rank3Result rank3_realizable(const DiscForm& F, int positive, int negative, const Rank3Options& options) {
  if (auto r = precheck(F, positive, negative)) return *r;
  const Rank3Space space = make_space(options.bound, positive, negative);
  const std::int64_t target = (negative % 2 ? -1 : 1) * F.order().get_si();
  const auto deadline = std::chrono::steady_clock::now() + options.time_cap;
  const std::int64_t total = static_cast<std::int64_t>(space.size());
  std::atomic<std::uint64_t> best{space.size()};
  std::atomic<bool> undecided{false}, timed_out{false};
  std::atomic<std::uint64_t> checked{0};
  // chunks are claimed in increasing order, so every index below the final
  // best has been checked unless the clock ran out
  constexpr std::uint64_t chunk = 4096;
  std::atomic<std::uint64_t> next{0};
#pragma omp parallel
  {
    std::uint64_t local = 0;
    while (!timed_out.load(std::memory_order_relaxed)) {
      const std::uint64_t start = next.fetch_add(chunk);
      if (start >= static_cast<std::uint64_t>(total) || start >= best.load(std::memory_order_relaxed)) break;
      const std::uint64_t stop = std::min<std::uint64_t>(start + chunk, static_cast<std::uint64_t>(total));
      for (std::uint64_t idx = start; idx < stop; ++idx) {
        if (idx >= best.load(std::memory_order_relaxed)) break;
        if ((local & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
          timed_out = true;
          break;
        }
        ++local;
        Verdict v = check_candidate(space.at(idx), F, target, positive, negative);
        if (v == Verdict::Match) {
          std::uint64_t cur = best.load();
          while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
          }
        } else if (v == Verdict::Undecided) {
          undecided = true;
        }
      }
    }
    checked += local;
  }
  // a witness below every unchecked index is final even if the clock ran out
  return finish(space, best.load(), undecided.load(), timed_out.load() && best.load() == space.size(), checked.load());
}

}  // namespace mk3
