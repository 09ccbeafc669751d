#include "mk3/quat.hpp"

#include "mk3/errors.hpp"

namespace mk3 {

struct QuaternionAlgebra::Data {
  NumberField K;
  FieldElement a;
  FieldElement b;
};

QuaternionAlgebra::QuaternionAlgebra(FieldElement a, FieldElement b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "a and b lie in different fields");
  if (a.is_zero() || b.is_zero()) throw Error(ErrorKind::ZeroElement, "quaternion parameters must be nonzero");
  data_ = std::make_shared<Data>(Data{a.field(), std::move(a), std::move(b)});
}

const NumberField& QuaternionAlgebra::field() const { return data_->K; }
const FieldElement& QuaternionAlgebra::a() const { return data_->a; }
const FieldElement& QuaternionAlgebra::b() const { return data_->b; }

QuatElement QuaternionAlgebra::element(FieldElement x0, FieldElement x1, FieldElement x2, FieldElement x3) const {
  return QuatElement(*this, {std::move(x0), std::move(x1), std::move(x2), std::move(x3)});
}

QuatElement QuaternionAlgebra::scalar(const FieldElement& x) const {
  const FieldElement z = field().zero();
  return element(x, z, z, z);
}

QuatElement QuaternionAlgebra::one() const { return scalar(field().one()); }

QuatElement QuaternionAlgebra::alpha() const {
  const FieldElement z = field().zero();
  return element(z, field().one(), z, z);
}

QuatElement QuaternionAlgebra::beta() const {
  const FieldElement z = field().zero();
  return element(z, z, field().one(), z);
}

QuatElement QuaternionAlgebra::alpha_beta() const {
  const FieldElement z = field().zero();
  return element(z, z, z, field().one());
}

std::string QuaternionAlgebra::to_string() const {
  return "(" + a().to_string() + ", " + b().to_string() + " / Q[t]/(" + format_poly(field().min_poly(), "t") + "))";
}

bool operator==(const QuaternionAlgebra& x, const QuaternionAlgebra& y) {
  if (x.data_ == y.data_) return true;
  if (!x.data_ || !y.data_) return false;
  return x.data_->a == y.data_->a && x.data_->b == y.data_->b;
}

// ---------------------------------------------------------------------------

QuatElement::QuatElement(QuaternionAlgebra algebra, std::array<FieldElement, 4> coords)
    : algebra_(std::move(algebra)), x_(std::move(coords)) {
  for (const auto& c : x_)
    if (c.field() != algebra_.field()) throw Error(ErrorKind::FieldMismatch, "quaternion coordinate outside the base field");
}

namespace {
void check_same(const QuatElement& x, const QuatElement& y) {
  if (x.algebra() != y.algebra()) throw Error(ErrorKind::AlgebraMismatch, "elements of different quaternion algebras");
}
}  // namespace

QuatElement QuatElement::conj() const { return QuatElement(algebra_, {x_[0], -x_[1], -x_[2], -x_[3]}); }

FieldElement QuatElement::trd() const { return Rat(2) * x_[0]; }

FieldElement QuatElement::nrd() const {
  const FieldElement& a = algebra_.a();
  const FieldElement& b = algebra_.b();
  return x_[0] * x_[0] - a * x_[1] * x_[1] - b * x_[2] * x_[2] + a * b * x_[3] * x_[3];
}

bool QuatElement::is_zero() const {
  for (const auto& c : x_)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<Rat> QuatElement::flat() const {
  const std::size_t d = static_cast<std::size_t>(algebra_.field().degree());
  std::vector<Rat> v(4 * d);
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t j = 0; j < d; ++j) v[c * d + j] = x_[c][j];
  return v;
}

QuatElement QuatElement::operator-() const { return QuatElement(algebra_, {-x_[0], -x_[1], -x_[2], -x_[3]}); }

QuatElement operator+(const QuatElement& x, const QuatElement& y) {
  check_same(x, y);
  return QuatElement(x.algebra_, {x.x_[0] + y.x_[0], x.x_[1] + y.x_[1], x.x_[2] + y.x_[2], x.x_[3] + y.x_[3]});
}

QuatElement operator-(const QuatElement& x, const QuatElement& y) {
  check_same(x, y);
  return QuatElement(x.algebra_, {x.x_[0] - y.x_[0], x.x_[1] - y.x_[1], x.x_[2] - y.x_[2], x.x_[3] - y.x_[3]});
}

QuatElement operator*(const QuatElement& x, const QuatElement& y) {
  check_same(x, y);
  const FieldElement& a = x.algebra_.a();
  const FieldElement& b = x.algebra_.b();
  const auto& p = x.x_;
  const auto& q = y.x_;
  // alpha^2 = a, beta^2 = b, alpha*beta = -beta*alpha
  return QuatElement(x.algebra_, {p[0] * q[0] + a * p[1] * q[1] + b * p[2] * q[2] - a * b * p[3] * q[3],
                                  p[0] * q[1] + p[1] * q[0] - b * p[2] * q[3] + b * p[3] * q[2],
                                  p[0] * q[2] + p[2] * q[0] + a * p[1] * q[3] - a * p[3] * q[1],
                                  p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1]});
}

QuatElement operator*(const FieldElement& k, const QuatElement& x) {
  return QuatElement(x.algebra_, {k * x.x_[0], k * x.x_[1], k * x.x_[2], k * x.x_[3]});
}

QuatElement operator*(const Rat& k, const QuatElement& x) {
  return QuatElement(x.algebra_, {k * x.x_[0], k * x.x_[1], k * x.x_[2], k * x.x_[3]});
}

bool operator==(const QuatElement& x, const QuatElement& y) { return x.algebra_ == y.algebra_ && x.x_ == y.x_; }

std::string QuatElement::to_string(const std::string& var) const {
  static const char* names[4] = {"", "a", "b", "ab"};
  std::string out;
  for (std::size_t c = 0; c < 4; ++c) {
    if (x_[c].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + x_[c].to_string(var) + ")";
    if (c) out += std::string("*") + names[c];
  }
  return out.empty() ? "0" : out;
}

QuatElement quat_mul(const QuatElement& x, const QuatElement& y) { return x * y; }
QuatElement quat_conj(const QuatElement& x) { return x.conj(); }
FieldElement trd(const QuatElement& x) { return x.trd(); }
FieldElement nrd(const QuatElement& x) { return x.nrd(); }

std::string to_string(FormKind f) { return f == FormKind::Killing ? "killing" : "twisted"; }

FormKind parse_form(const std::string& s) {
  if (s == "killing") return FormKind::Killing;
  if (s == "twisted") return FormKind::Twisted;
  throw Error(ErrorKind::Validation, "unknown form '" + s + "' (expected killing or twisted)");
}

FieldElement killing_form(const QuatElement& x, const QuatElement& y) { return (x * y).trd(); }

FieldElement twisted_form(const QuatElement& x, const QuatElement& y) {
  check_same(x, y);
  const QuaternionAlgebra& B = x.algebra();
  return Rat(2) * (B.b() * x[1] * y[1] + B.a() * x[2] * y[2] - x[3] * y[3]);
}

FieldElement apply_form(FormKind kind, const QuatElement& x, const QuatElement& y) {
  return kind == FormKind::Killing ? killing_form(x, y) : twisted_form(x, y);
}

KMatrix gram_matrix(FormKind kind, const std::vector<QuatElement>& basis) {
  if (basis.empty()) return {};
  const NumberField& K = basis.front().algebra().field();
  KMatrix g(basis.size(), basis.size(), K.zero());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) g(i, j) = g(j, i) = apply_form(kind, basis[i], basis[j]);
  return g;
}

KMatrix killing_gram(const QuaternionAlgebra& B) {
  return gram_matrix(FormKind::Killing, {B.alpha(), B.beta(), B.alpha_beta()});
}

KMatrix twisted_gram(const QuaternionAlgebra& B) {
  return gram_matrix(FormKind::Twisted, {B.alpha(), B.beta(), B.alpha_beta()});
}

FieldElement det(const KMatrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::Validation, "det of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) throw Error(ErrorKind::Validation, "det of empty K-matrix");
  KMatrix a = input;
  FieldElement d = a(0, 0).field().one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && a(r, k).is_zero()) ++r;
    if (r == n) return d.field().zero();
    if (r != k) {
      a.swap_rows(k, r);
      d = -d;
    }
    d = d * a(k, k);
    const FieldElement inv = a(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      FieldElement f = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
    }
  }
  return d;
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    default: return "unknown";
  }
}

// ---------------------------------------------------------------------------

QuatOrder QuatOrder::from_generators(const QuaternionAlgebra& B, std::array<QuatElement, 4> gens) {
  QuatOrder O;
  O.algebra_ = B;
  O.gens_ = std::move(gens);
  const NumberField& K = B.field();
  const std::size_t d = static_cast<std::size_t>(K.degree());
  const std::size_t n = 4 * d;

  for (const auto& e : O.gens_) {
    if (e.algebra() != B) throw Error(ErrorKind::AlgebraMismatch, "order generator from another algebra");
    if (!e.trd().is_integral() || !e.nrd().is_integral()) {
      O.failure_ = "generator " + e.to_string() + " has trd or nrd outside O_K";
      return O;
    }
  }
  O.integral_ = true;

  for (const auto& e : O.gens_) {
    QuatElement t = e;
    for (std::size_t j = 0; j < d; ++j) {
      O.z_basis_.push_back(t);
      t = K.theta() * t;
    }
  }
  RatMatrix coords(n, n, Rat(0));
  for (std::size_t r = 0; r < n; ++r) {
    auto v = O.z_basis_[r].flat();
    for (std::size_t c = 0; c < n; ++c) coords(r, c) = v[c];
  }
  if (rank(coords) != n) {
    O.failure_ = "generators are linearly dependent over K";
    return O;
  }
  O.nondegenerate_ = true;
  O.inverse_coords_ = inverse(coords);

  if (!O.coordinates(B.one())) {
    O.failure_ = "1 is not in the span";
    return O;
  }
  O.contains_one_ = true;

  for (const auto& x : O.z_basis_)
    for (const auto& y : O.z_basis_)
      if (!O.coordinates(x * y)) {
        O.failure_ = "span is not closed under multiplication";
        return O;
      }
  O.is_ring_ = true;
  return O;
}

std::optional<std::vector<Int>> QuatOrder::coordinates(const QuatElement& x) const {
  if (!nondegenerate_) return std::nullopt;
  const auto v = x.flat();
  const std::size_t n = v.size();
  std::vector<Int> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] != 0) s += v[i] * inverse_coords_(i, j);
    if (!is_integral(s)) return std::nullopt;
    out[j] = s.get_num();
  }
  return out;
}

void QuatOrder::require_verified() const {
  if (!verified()) throw Error(ErrorKind::NotAnOrder, failure_.empty() ? "order checks failed" : failure_);
}

KMatrix trace_gram(const QuatOrder& O) {
  O.require_verified();
  const NumberField& K = O.algebra().field();
  KMatrix g(4, 4, K.zero());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      g(i, j) = (O.gens()[i] * O.gens()[j]).trd();
      if (!g(i, j).is_integral())
        throw Error(ErrorKind::NotAnOrder, "trace Gram entry " + g(i, j).to_string() + " is not integral");
    }
  return g;
}

FieldElement order_disc_generator(const QuatOrder& O) { return det(trace_gram(O)); }

Ideal order_disc(const QuatOrder& O) { return Ideal::principal(order_disc_generator(O)); }

bool is_maximal(const QuatOrder& O, const Ideal& D) { return order_disc(O) == D * D; }

// ---------------------------------------------------------------------------

namespace {

// Row vector of integer coordinates of x in the order's Z-basis.
std::optional<std::vector<Int>> order_coords(const RatMatrix& inv, const QuatElement& x) {
  const auto v = x.flat();
  const std::size_t n = v.size();
  std::vector<Int> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] != 0) s += v[i] * inv(i, j);
    if (!is_integral(s)) return std::nullopt;
    out[j] = s.get_num();
  }
  return out;
}

bool saturated_full_rank(const IntMatrix& rows) {
  SmithForm s = smith_normal_form(rows);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (s.diagonal(i, i) != 1) return false;
  return true;
}

}  // namespace

std::optional<std::vector<Int>> TraceZeroLattice::lattice_coords(const QuatElement& x) const {
  if (x.algebra() != algebra_) return std::nullopt;
  auto oc = order_coords(order_inverse_, x);
  if (!oc) return std::nullopt;
  return solve_hnf(kernel_, std::move(*oc));
}

bool TraceZeroLattice::contains(const QuatElement& x) const { return lattice_coords(x).has_value(); }

bool TraceZeroLattice::is_free_basis(const std::array<QuatElement, 3>& candidate) const {
  const NumberField& K = algebra_.field();
  const std::size_t d = static_cast<std::size_t>(K.degree());
  IntMatrix rows(3 * d, 3 * d, Int(0));
  for (std::size_t i = 0; i < 3; ++i) {
    QuatElement t = candidate[i];
    for (std::size_t j = 0; j < d; ++j) {
      auto c = lattice_coords(t);
      if (!c) return false;
      for (std::size_t k = 0; k < 3 * d; ++k) rows(i * d + j, k) = (*c)[k];
      t = K.theta() * t;
    }
  }
  return abs(mk3::det(rows)) == 1;
}

void TraceZeroLattice::set_free_basis(const std::array<QuatElement, 3>& basis) {
  if (!is_free_basis(basis)) throw Error(ErrorKind::NoFreeBasis, "elements do not form an O_K-basis of O ∩ B^0");
  free_basis_ = basis;
}

TraceZeroLattice trace_zero_sublattice(const QuatOrder& O) {
  O.require_verified();
  const QuaternionAlgebra& B = O.algebra();
  const NumberField& K = B.field();
  const std::size_t d = static_cast<std::size_t>(K.degree());
  const std::size_t n = 4 * d;

  // Z-linear map x -> coefficients of trd(x)
  IntMatrix tr(n, d, Int(0));
  for (std::size_t r = 0; r < n; ++r) {
    FieldElement t = O.z_basis()[r].trd();
    for (std::size_t j = 0; j < d; ++j) tr(r, j) = t[j].get_num();
  }

  TraceZeroLattice L;
  L.algebra_ = B;
  L.kernel_ = integer_left_kernel(tr);
  if (L.kernel_.rows() != 3 * d) throw Error(ErrorKind::NotAnOrder, "trace-zero kernel has unexpected rank");
  {
    RatMatrix coords(n, n, Rat(0));
    for (std::size_t r = 0; r < n; ++r) {
      auto v = O.z_basis()[r].flat();
      for (std::size_t c = 0; c < n; ++c) coords(r, c) = v[c];
    }
    L.order_inverse_ = inverse(coords);
  }
  for (std::size_t k = 0; k < L.kernel_.rows(); ++k) {
    QuatElement g = B.scalar(K.zero());
    for (std::size_t r = 0; r < n; ++r)
      if (L.kernel_(k, r) != 0) g = g + Rat(L.kernel_(k, r)) * O.z_basis()[r];
    L.gens_.push_back(std::move(g));
  }

  // Greedy O_K-basis: grow a saturated O_K-submodule one cyclic piece at a
  // time, trying short combinations of the Z-basis, simplest elements first.
  const std::size_t m = 3 * d;
  auto element_of = [&](const std::vector<Int>& c) {
    QuatElement g = B.scalar(K.zero());
    for (std::size_t k = 0; k < m; ++k)
      if (c[k] != 0) g = g + Rat(c[k]) * L.gens_[k];
    return g;
  };
  std::vector<std::vector<Int>> candidates;
  {
    std::vector<Int> v(m, Int(0));
    auto rec = [&](auto&& self, std::size_t start, int left, bool any) -> void {
      if (any) candidates.push_back(v);
      if (left == 0) return;
      for (std::size_t i = start; i < m; ++i)
        for (int s : {1, -1}) {
          if (!any && s < 0) continue;  // first nonzero entry positive
          v[i] = s;
          self(self, i + 1, left - 1, true);
          v[i] = 0;
        }
    };
    rec(rec, 0, 3, false);
  }
  std::vector<std::pair<std::pair<int, Int>, std::size_t>> keyed;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    QuatElement g = element_of(candidates[i]);
    int support = 0;
    for (std::size_t c = 0; c < 4; ++c) support += g[c].is_zero() ? 0 : 1;
    Int height = 0;
    for (const auto& x : g.flat()) height += abs(Int(x.get_num())) + Int(x.get_den()) - 1;
    keyed.push_back({{support, height}, i});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  {
    std::vector<std::vector<Int>> sorted;
    for (const auto& k : keyed) sorted.push_back(std::move(candidates[k.second]));
    candidates = std::move(sorted);
  }
  std::vector<QuatElement> chosen;
  std::vector<std::vector<Int>> rows;
  for (int step = 0; step < 3; ++step) {
    bool found = false;
    for (const auto& cand : candidates) {
      QuatElement g = element_of(cand);
      std::vector<std::vector<Int>> trial = rows;
      QuatElement t = g;
      for (std::size_t j = 0; j < d; ++j) {
        trial.push_back(*L.lattice_coords(t));
        t = K.theta() * t;
      }
      IntMatrix mat(trial.size(), m, Int(0));
      for (std::size_t r = 0; r < trial.size(); ++r)
        for (std::size_t c = 0; c < m; ++c) mat(r, c) = trial[r][c];
      if (saturated_full_rank(mat)) {
        rows = std::move(trial);
        chosen.push_back(g);
        found = true;
        break;
      }
    }
    if (!found) break;
  }
  if (chosen.size() == 3) L.free_basis_ = std::array<QuatElement, 3>{chosen[0], chosen[1], chosen[2]};
  return L;
}

KMatrix k_gram_on(const TraceZeroLattice& L, FormKind form) {
  if (!L.free_basis()) throw Error(ErrorKind::NoFreeBasis, "no O_K-basis of rank 3 available");
  const auto& fb = *L.free_basis();
  return gram_matrix(form, {fb[0], fb[1], fb[2]});
}

}  // namespace mk3
