#pragma once

// Integer lattices given by Gram matrices: determinant, signature, Smith
// form, discriminant groups and forms, ADE root lattices, Nikulin-style
// even overlattices from isotropic subgroups, and a bounded search for
// rank-3 lattices with a prescribed discriminant form.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mk3/matrix.hpp"

namespace mk3 {

class IntLattice {
 public:
  IntLattice() = default;
  /// Throws Validation unless gram is square and symmetric.
  explicit IntLattice(IntMatrix gram);

  const IntMatrix& gram() const noexcept { return gram_; }
  std::size_t rank() const noexcept { return gram_.rows(); }
  Int det() const;
  Inertia signature() const;
  bool is_even() const;
  SmithForm snf() const;
  /// Nontrivial invariant factors d_1 | d_2 | ... (each > 1).
  std::vector<Int> disc_group() const;

 private:
  IntMatrix gram_;
};

IntLattice direct_sum(const IntLattice& a, const IntLattice& b);

/// Discriminant form of an even nondegenerate lattice: generators of
/// L^* / L (rational coordinate vectors) with orders `factors`, the
/// quadratic values q(g_i) in Q/2Z and bilinear values b(g_i, g_j) in Q/Z.
struct DiscForm {
  std::vector<Int> factors;
  std::vector<std::vector<Rat>> gens;
  std::vector<Rat> q;  // representatives in [0, 2)
  RatMatrix b;         // representatives in [0, 1)

  Int order() const;
  /// q of sum c_i g_i, reduced into [0, 2).
  Rat q_value(const std::vector<Int>& c) const;
  Rat b_value(const std::vector<Int>& x, const std::vector<Int>& y) const;
};

Rat mod2(const Rat& x);
Rat mod1(const Rat& x);

/// Throws OddLattice, Degenerate.
DiscForm disc_form(const IntLattice& L);
/// Same group with q and b negated.
DiscForm negate(const DiscForm& F);
DiscForm direct_sum(const DiscForm& a, const DiscForm& b);

struct LengthInfo {
  int lambda = 0;
  std::vector<std::pair<Int, int>> per_prime;  // (p, l_p), p increasing
};
LengthInfo length(const std::vector<Int>& factors);
/// Prime-power cyclic factors, ordered by prime then exponent.
std::vector<Int> elementary_divisors(const std::vector<Int>& factors);
inline LengthInfo length(const DiscForm& F) { return length(F.factors); }

// ---------------------------------------------------------------------------

struct ADEComponent {
  char type = 'A';  // 'A', 'D' or 'E'
  int n = 1;
  int multiplicity = 1;
};

struct ADEConfig {
  std::vector<ADEComponent> components;

  /// "8A1", "A3+6A1", "D4", "E8+A1"; throws UnknownSymbol.
  static ADEConfig parse(const std::string& text);
  std::string to_string() const;
  int rank() const;
};

IntMatrix cartan_matrix(char type, int n);
enum class Sign { Positive, Negative };
IntLattice ade_lattice(const ADEConfig& config, Sign sign);

// ---------------------------------------------------------------------------

/// Finite quadratic module with machine-word arithmetic, used by the
/// enumeration kernels. Elements are coefficient vectors (c_i mod d_i),
/// encoded in mixed radix as a single 64-bit code.
class FiniteQuadraticModule {
 public:
  /// Throws CapExceeded when |A| exceeds `cap`.
  FiniteQuadraticModule(const DiscForm& F, std::uint64_t cap);

  std::uint64_t size() const noexcept { return size_; }
  std::size_t ngens() const noexcept { return factors_.size(); }
  const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  std::vector<std::int64_t> decode(std::uint64_t code) const;
  std::uint64_t encode(const std::vector<std::int64_t>& c) const;
  std::uint64_t add(std::uint64_t x, std::uint64_t y) const;
  std::uint64_t scale(std::uint64_t x, std::int64_t k) const;
  /// Numerator of q in (1/M) Z / 2M Z.
  std::int64_t q_num(std::uint64_t code) const;
  /// Numerator of b in (1/M) Z / M Z.
  std::int64_t b_num(std::uint64_t x, std::uint64_t y) const;
  std::int64_t element_order(std::uint64_t code) const;
  /// Sorted codes of the subgroup generated by `gens`.
  std::vector<std::uint64_t> span(const std::vector<std::uint64_t>& gens) const;

 private:
  std::vector<std::int64_t> factors_;
  std::vector<std::uint64_t> radix_;
  std::uint64_t size_ = 1;
  std::int64_t modulus_ = 1;  // M = lcm of the factors
  std::vector<std::int64_t> q_;
  std::vector<std::vector<std::int64_t>> b_;
};

/// Nonzero codes x with q(x) = 0 mod 2Z, increasing.
std::vector<std::uint64_t> isotropic_elements(const FiniteQuadraticModule& A);
std::vector<std::uint64_t> isotropic_elements_serial(const FiniteQuadraticModule& A);

struct Subgroup {
  std::vector<std::vector<Int>> generators;  // coefficient vectors over the DiscForm gens
  std::vector<std::uint64_t> elements;       // sorted codes
  std::size_t order() const { return elements.size(); }
};

/// All subgroups with at most two generators and order <= max_order on
/// which q vanishes identically (the trivial subgroup first), sorted by
/// order then elements. Throws CapExceeded beyond `cap` group elements or
/// element pairs.
std::vector<Subgroup> isotropic_subgroups(const DiscForm& F, std::size_t max_order, std::uint64_t cap = 1000000);

/// Lattice spanned by L and lifts of H; checks evenness and
/// |A_L| = |H|^2 |A_L'|. Throws NotIsotropic, MismatchDetected.
IntLattice even_overlattice(const IntLattice& L, const DiscForm& F, const std::vector<std::vector<Int>>& h_generators);

/// Brute-force isomorphism of discriminant forms (generator images).
/// Returns nullopt when the search exceeds `work_cap` steps.
std::optional<bool> disc_forms_isomorphic(const DiscForm& a, const DiscForm& b, std::uint64_t work_cap = 5000000);

struct Rank3Result {
  enum class Status { Yes, No, Unknown };
  Status status = Status::Unknown;
  std::optional<IntMatrix> witness;
  std::string reason;
  std::uint64_t candidates = 0;
  bool timed_out = false;
};
std::string to_string(Rank3Result::Status s);

struct Rank3Options {
  int bound = 6;
  std::chrono::milliseconds time_cap{10000};
};

/// Searches even symmetric 3x3 Grams with |entries| <= bound and signature
/// (positive, negative), p + q = 3, whose discriminant form is isomorphic
/// to F. Length > 3 answers No immediately; an exhausted bound or the wall
/// clock cap answers Unknown. The witness is the first in lexicographic
/// order of (g00, g11, g22, g01, g02, g12).
Rank3Result rank3_realizable(const DiscForm& F, int positive, int negative, const Rank3Options& options);
Rank3Result rank3_realizable_serial(const DiscForm& F, int positive, int negative, const Rank3Options& options);

}  // namespace mk3
