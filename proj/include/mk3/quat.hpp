#pragma once

// Quaternion algebras B = (a, b / K) with basis 1, alpha, beta, alpha*beta,
// their reduced trace and norm, Killing and twisted forms on B^0, and
// orders given by explicit O_K-generators (verified, never searched for).

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mk3/matrix.hpp"
#include "mk3/numfield.hpp"

namespace mk3 {

class QuatElement;
using KMatrix = Matrix<FieldElement>;

class QuaternionAlgebra {
 public:
  QuaternionAlgebra() = default;
  /// Throws ZeroElement when a or b vanishes, FieldMismatch on mixed fields.
  QuaternionAlgebra(FieldElement a, FieldElement b);

  const NumberField& field() const;
  const FieldElement& a() const;
  const FieldElement& b() const;

  QuatElement element(FieldElement x0, FieldElement x1, FieldElement x2, FieldElement x3) const;
  QuatElement scalar(const FieldElement& x) const;
  QuatElement one() const;
  QuatElement alpha() const;
  QuatElement beta() const;
  QuatElement alpha_beta() const;

  std::string to_string() const;  // "(a, b / K)"
  friend bool operator==(const QuaternionAlgebra& x, const QuaternionAlgebra& y);
  friend bool operator!=(const QuaternionAlgebra& x, const QuaternionAlgebra& y) { return !(x == y); }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

class QuatElement {
 public:
  QuatElement() = default;
  QuatElement(QuaternionAlgebra algebra, std::array<FieldElement, 4> coords);

  const QuaternionAlgebra& algebra() const noexcept { return algebra_; }
  const FieldElement& operator[](std::size_t i) const { return x_[i]; }
  const std::array<FieldElement, 4>& coords() const noexcept { return x_; }

  QuatElement conj() const;
  FieldElement trd() const;
  FieldElement nrd() const;
  bool is_zero() const;
  bool is_pure() const { return x_[0].is_zero(); }
  /// Coordinates over Q in the basis theta^j * {1, alpha, beta, alpha*beta},
  /// index 4-coordinate-major: c * d + j.
  std::vector<Rat> flat() const;

  QuatElement operator-() const;
  friend QuatElement operator+(const QuatElement& x, const QuatElement& y);
  friend QuatElement operator-(const QuatElement& x, const QuatElement& y);
  friend QuatElement operator*(const QuatElement& x, const QuatElement& y);
  friend QuatElement operator*(const FieldElement& k, const QuatElement& x);
  friend QuatElement operator*(const Rat& k, const QuatElement& x);
  friend bool operator==(const QuatElement& x, const QuatElement& y);
  friend bool operator!=(const QuatElement& x, const QuatElement& y) { return !(x == y); }

  std::string to_string(const std::string& var = "t") const;

 private:
  QuaternionAlgebra algebra_;
  std::array<FieldElement, 4> x_;
};

QuatElement quat_mul(const QuatElement& x, const QuatElement& y);
QuatElement quat_conj(const QuatElement& x);
FieldElement trd(const QuatElement& x);
FieldElement nrd(const QuatElement& x);

enum class FormKind { Killing, Twisted };
std::string to_string(FormKind f);
FormKind parse_form(const std::string& s);

/// trd(x y); on B^0 this is the Killing form.
FieldElement killing_form(const QuatElement& x, const QuatElement& y);
/// diag(2b, 2a, -2) in the alpha, beta, alpha*beta coordinates of B^0.
FieldElement twisted_form(const QuatElement& x, const QuatElement& y);
FieldElement apply_form(FormKind kind, const QuatElement& x, const QuatElement& y);

/// diag(2a, 2b, -2ab) on {alpha, beta, alpha*beta}.
KMatrix killing_gram(const QuaternionAlgebra& B);
/// diag(2b, 2a, -2).
KMatrix twisted_gram(const QuaternionAlgebra& B);
/// [form(x_i, x_j)] for arbitrary elements.
KMatrix gram_matrix(FormKind kind, const std::vector<QuatElement>& basis);

FieldElement det(const KMatrix& m);

enum class Tri { No, Yes, Unknown };
std::string to_string(Tri t);

class QuatOrder {
 public:
  /// Builds the O_K-span of four generators and records the order checks;
  /// it never throws for a non-order, the flags say what failed.
  static QuatOrder from_generators(const QuaternionAlgebra& B, std::array<QuatElement, 4> gens);

  const QuaternionAlgebra& algebra() const noexcept { return algebra_; }
  const std::array<QuatElement, 4>& gens() const noexcept { return gens_; }
  /// Z-basis theta^j e_i, generator-major.
  const std::vector<QuatElement>& z_basis() const noexcept { return z_basis_; }

  bool nondegenerate() const noexcept { return nondegenerate_; }
  bool contains_one() const noexcept { return contains_one_; }
  bool is_ring() const noexcept { return is_ring_; }
  bool integral() const noexcept { return integral_; }
  bool verified() const noexcept { return nondegenerate_ && contains_one_ && is_ring_ && integral_; }
  Tri maximal() const noexcept { return maximal_; }
  void set_maximal(Tri t) { maximal_ = t; }
  /// Reason the last failing check reported, empty when verified.
  const std::string& failure() const noexcept { return failure_; }

  /// Integer coordinates in z_basis(), or nullopt when x is not in the order.
  std::optional<std::vector<Int>> coordinates(const QuatElement& x) const;
  void require_verified() const;

 private:
  QuaternionAlgebra algebra_;
  std::array<QuatElement, 4> gens_;
  std::vector<QuatElement> z_basis_;
  RatMatrix inverse_coords_;
  bool nondegenerate_ = false, contains_one_ = false, is_ring_ = false, integral_ = false;
  Tri maximal_ = Tri::Unknown;
  std::string failure_;
};

/// [trd(e_i e_j)]. Throws NotAnOrder.
KMatrix trace_gram(const QuatOrder& O);
/// det [trd(e_i e_j)], a generator of disc(O).
FieldElement order_disc_generator(const QuatOrder& O);
Ideal order_disc(const QuatOrder& O);
/// disc(O) == D^2. Throws NotAnOrder.
bool is_maximal(const QuatOrder& O, const Ideal& D);

/// The saturated trace-zero part O ∩ B^0 as a Z-lattice of rank 3d.
class TraceZeroLattice {
 public:
  const QuaternionAlgebra& algebra() const noexcept { return algebra_; }
  /// Z-basis (HNF in the order's coordinates).
  const std::vector<QuatElement>& gens() const noexcept { return gens_; }
  /// O_K-basis of rank 3 when one was found.
  const std::optional<std::array<QuatElement, 3>>& free_basis() const noexcept { return free_basis_; }

  bool contains(const QuatElement& x) const;
  /// True iff {theta^j x_i} is a Z-basis of this lattice.
  bool is_free_basis(const std::array<QuatElement, 3>& candidate) const;
  void set_free_basis(const std::array<QuatElement, 3>& basis);

 private:
  friend TraceZeroLattice trace_zero_sublattice(const QuatOrder& O);
  std::optional<std::vector<Int>> lattice_coords(const QuatElement& x) const;

  QuaternionAlgebra algebra_;
  std::vector<QuatElement> gens_;
  IntMatrix kernel_;  // rows: gens_ in order coordinates
  RatMatrix order_inverse_;
  std::optional<std::array<QuatElement, 3>> free_basis_;
};

TraceZeroLattice trace_zero_sublattice(const QuatOrder& O);

/// Gram of the chosen form on the free O_K-basis. Throws NoFreeBasis.
KMatrix k_gram_on(const TraceZeroLattice& L, FormKind form);

}  // namespace mk3
