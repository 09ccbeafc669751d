#pragma once

// Dense row-major matrices and the exact linear algebra the lattice code
// needs: determinants, inverses, Hermite and Smith normal forms, integer
// kernels and inertia of symmetric forms.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "mk3/arith.hpp"

namespace mk3 {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) data_.insert(data_.end(), row.begin(), row.end());
  }

  static Matrix identity(std::size_t n, const T& zero = T(0), const T& one = T(1)) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, rows_ && cols_ ? data_[0] : T());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    const T zero = a.rows_ && a.cols_ ? a(0, 0) - a(0, 0) : T();
    Matrix c(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == zero) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rational(const IntMatrix& m);
/// Throws Error{NonIntegralGram} if some entry has a denominator.
IntMatrix to_integer(const RatMatrix& m);

/// Fraction-free (Bareiss) elimination.
Int det(const IntMatrix& m);
Rat det(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Throws Error{Degenerate} when singular.
RatMatrix inverse(const RatMatrix& m);

/// Row-style Hermite normal form: rows span the same lattice, upper
/// echelon, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped.
IntMatrix hnf_rows(const IntMatrix& m);

/// Basis (as rows) of { x in Z^m : x * M = 0 } for an m x n matrix M.
/// The basis is saturated and returned in row HNF.
IntMatrix integer_left_kernel(const IntMatrix& m);

/// Integer c with c * H = v for a row HNF H (full row rank), or nullopt
/// when v is not in the row lattice of H.
std::optional<std::vector<Int>> solve_hnf(const IntMatrix& hnf, std::vector<Int> v);

struct SmithForm {
  IntMatrix diagonal;  // D, same shape as the input
  IntMatrix left;      // U, unimodular
  IntMatrix right;     // V, unimodular
};

/// U * A * V = D with d_1 | d_2 | ... nonnegative on the diagonal.
SmithForm smith_normal_form(const IntMatrix& m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Inertia of a symmetric matrix via congruence (symmetric pivoting).
Inertia inertia(const RatMatrix& symmetric);
Inertia inertia(const IntMatrix& symmetric);

}  // namespace mk3
