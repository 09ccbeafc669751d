#include "mk3/matrix.hpp"

#include <utility>

#include "mk3/errors.hpp"

namespace mk3 {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j)))
        throw Error(ErrorKind::NonIntegralGram, "entry " + to_string(m(i, j)) + " is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

Int det(const IntMatrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::Validation, "det of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  int flips = 0;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && a(r, k) == 0) ++r;
      if (r == n) return 0;
      a.swap_rows(k, r);
      ++flips;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Int d = a(n - 1, n - 1);
  return flips % 2 ? Int(-d) : d;
}

Rat det(const RatMatrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::Validation, "det of non-square matrix");
  const std::size_t n = input.rows();
  RatMatrix a = input;
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && a(r, k) == 0) ++r;
    if (r == n) return 0;
    if (r != k) {
      a.swap_rows(k, r);
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

std::size_t rank(const RatMatrix& input) {
  RatMatrix a = input;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

RatMatrix inverse(const RatMatrix& input) {
  if (!input.is_square()) throw Error(ErrorKind::Validation, "inverse of non-square matrix");
  const std::size_t n = input.rows();
  RatMatrix a = input;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t r = k;
    while (r < n && a(r, k) == 0) ++r;
    if (r == n) throw Error(ErrorKind::Degenerate, "matrix is singular");
    a.swap_rows(k, r);
    inv.swap_rows(k, r);
    Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

namespace {

// Row echelon over Z using gcd steps. When `track` is non-null the same row
// operations are applied to it (it must have as many rows as `a`).
// Returns the number of nonzero rows; they occupy the top of `a`.
std::size_t integer_row_echelon(IntMatrix& a, IntMatrix* track) {
  auto row_op = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) -= f * a(src, j);
    if (track)
      for (std::size_t j = 0; j < track->cols(); ++j) (*track)(dst, j) -= f * (*track)(src, j);
  };
  auto swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    if (track) track->swap_rows(x, y);
  };
  auto negate = [&](std::size_t x) {
    for (std::size_t j = 0; j < a.cols(); ++j) a(x, j) = -a(x, j);
    if (track)
      for (std::size_t j = 0; j < track->cols(); ++j) (*track)(x, j) = -(*track)(x, j);
  };

  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    while (true) {
      // smallest nonzero |entry| in column c among rows r..
      std::size_t best = a.rows();
      for (std::size_t i = r; i < a.rows(); ++i)
        if (a(i, c) != 0 && (best == a.rows() || abs(a(i, c)) < abs(a(best, c)))) best = i;
      if (best == a.rows()) break;
      swap(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < a.rows(); ++i) {
        if (a(i, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
        row_op(i, r, q);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r < a.rows() && a(r, c) != 0) {
      if (a(r, c) < 0) negate(r);
      for (std::size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
        if (q != 0) row_op(i, r, q);
      }
      pivot_cols.push_back(c);
      ++r;
    }
  }
  return r;
}

}  // namespace

IntMatrix hnf_rows(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = integer_row_echelon(a, nullptr);
  IntMatrix out(r, a.cols(), Int(0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

IntMatrix integer_left_kernel(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix t = IntMatrix::identity(m.rows(), Int(0), Int(1));
  std::size_t r = integer_row_echelon(a, &t);
  IntMatrix k(m.rows() - r, m.rows(), Int(0));
  for (std::size_t i = r; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) k(i - r, j) = t(i, j);
  return k.rows() ? hnf_rows(k) : k;
}

std::optional<std::vector<Int>> solve_hnf(const IntMatrix& hnf, std::vector<Int> v) {
  std::vector<Int> c(hnf.rows(), Int(0));
  std::size_t col = 0;
  for (std::size_t i = 0; i < hnf.rows(); ++i) {
    while (col < hnf.cols() && hnf(i, col) == 0) {
      if (v[col] != 0) return std::nullopt;
      ++col;
    }
    if (col == hnf.cols()) break;
    if (!mpz_divisible_p(v[col].get_mpz_t(), hnf(i, col).get_mpz_t())) return std::nullopt;
    c[i] = v[col] / hnf(i, col);
    for (std::size_t k = col; k < hnf.cols(); ++k) v[k] -= c[i] * hnf(i, k);
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return c;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(rows, Int(0), Int(1));
  IntMatrix v = IntMatrix::identity(cols, Int(0), Int(1));

  auto add_row = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t j = 0; j < cols; ++j) d(dst, j) += f * d(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) += f * u(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t i = 0; i < rows; ++i) d(i, dst) += f * d(i, src);
    for (std::size_t i = 0; i < cols; ++i) v(i, dst) += f * v(i, src);
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      // pivot: smallest nonzero |entry| in the trailing block
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = k; i < rows; ++i)
        for (std::size_t j = k; j < cols; ++j)
          if (d(i, j) != 0 && (pi == rows || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      d.swap_rows(k, pi);
      u.swap_rows(k, pi);
      d.swap_cols(k, pj);
      v.swap_cols(k, pj);

      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (d(i, k) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, k).get_mpz_t(), d(k, k).get_mpz_t());
        add_row(i, k, -q);
        if (d(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (d(k, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(k, j).get_mpz_t(), d(k, k).get_mpz_t());
        add_col(j, k, -q);
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility: pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = k + 1; i < rows && divides; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(k, k).get_mpz_t())) {
            add_row(k, i, Int(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(k, k) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(k, j) = -d(k, j);
      for (std::size_t j = 0; j < rows; ++j) u(k, j) = -u(k, j);
    }
  }
  return {std::move(d), std::move(u), std::move(v)};
}

Inertia inertia(const RatMatrix& symmetric) {
  if (!symmetric.is_symmetric()) throw Error(ErrorKind::Validation, "inertia of non-symmetric matrix");
  RatMatrix a = symmetric;
  const std::size_t n = a.rows();
  Inertia result;
  // congruence: simultaneous row/column operations
  auto add = [&](std::size_t dst, std::size_t src, const Rat& f) {
    for (std::size_t j = 0; j < n; ++j) a(dst, j) += f * a(src, j);
    for (std::size_t i = 0; i < n; ++i) a(i, dst) += f * a(i, src);
  };
  auto swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    a.swap_cols(x, y);
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, p) == 0) ++p;
    if (p == n) {
      // all remaining diagonal entries vanish; find an off-diagonal pair
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) {
        result.zero += static_cast<int>(n - k);
        break;
      }
      add(pi, pj, Rat(1));  // new diagonal entry 2*a(pi,pj) != 0
      p = pi;
    }
    swap(k, p);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      add(i, k, Rat(-a(i, k) / a(k, k)));
    }
    if (a(k, k) > 0)
      ++result.positive;
    else
      ++result.negative;
  }
  return result;
}

Inertia inertia(const IntMatrix& symmetric) { return inertia(to_rational(symmetric)); }

}  // namespace mk3
