#pragma once

// Corestriction of quadratic O_K-lattices to Z via the trace form on the
// restriction-of-scalars basis {theta^j g_i}, the determinant identity
// det(Q_0) = disc(K)^n Nm(det Q), the canonical lattice attached to a
// quaternion order, and the CM discriminant pipeline.

#include <optional>
#include <string>
#include <vector>

#include "mk3/lattice.hpp"
#include "mk3/quat.hpp"
#include "mk3/ramification.hpp"

namespace mk3 {

struct KQuadLattice {
  NumberField field;
  std::vector<std::string> labels;
  KMatrix gram;  // symmetric, over K
};

struct CanonicalLattice {
  RatMatrix gram;
  std::vector<std::string> labels;  // phi(t^j*g_i), generator-major
  bool integral = true;
  Rat signed_det;

  /// Throws NonIntegralGram.
  IntLattice as_int_lattice() const { return IntLattice(to_integer(gram)); }
};

/// z[(i,j),(k,l)] = Tr(Q(g_i, g_k) theta^(j+l)).
/// The parallel version tabulates Tr(Q_ik theta^m) across threads; the
/// serial version evaluates every entry directly.
CanonicalLattice corestrict(const KQuadLattice& L);
CanonicalLattice corestrict_serial(const KQuadLattice& L);

struct DetIdentity {
  Rat lhs;  // det of the corestricted Gram
  Rat rhs;  // disc(K)^n * Nm(det Q)
  Int disc;
  int n = 0;
  Rat norm_det;
};
/// Throws MismatchDetected when the two sides differ.
DetIdentity det_identity_check(const KQuadLattice& L, const CanonicalLattice& C);

struct LambdaCanReport {
  FormKind form = FormKind::Killing;
  CanonicalLattice lattice;
  std::optional<KQuadLattice> k_lattice;  // present when O ∩ B^0 is visibly free
  std::optional<DetIdentity> identity;
  Inertia signature;
  Int abs_det;  // 0 when the Gram is not integral
  Tri maximal = Tri::Unknown;
  std::optional<Ideal> disc_ideal;
  /// 2^d disc(K)^3 Nm(D)^2 (Killing form only).
  std::optional<Int> predicted;
  std::vector<std::string> warnings;
};

/// Composition trace_zero_sublattice -> k_gram_on -> corestrict, with a
/// Z-level Gram Tr(Q(g_r, g_s)) when no free O_K-basis is known.
LambdaCanReport lambda_can(const QuaternionAlgebra& B, const QuatOrder& O, FormKind form);
/// Same, starting from an already computed (and possibly re-based) O ∩ B^0.
LambdaCanReport lambda_can(const QuaternionAlgebra& B, const QuatOrder& O, const TraceZeroLattice& L, FormKind form,
                           const std::vector<std::string>& labels = {"g1", "g2", "g3"});

Int predicted_canonical_disc(const NumberField& K, const Ideal& D);

struct CmReport {
  NumberField field;
  FieldElement c1, c0;  // L = K[y] / (y^2 + c1 y + c0)
  KMatrix trace_gram;   // [Tr_{L/K}(x_i x_j)] on {1, y}
  FieldElement delta;   // its determinant c1^2 - 4 c0
  Rat norm_delta;
  FieldElement killing_disc;  // 2 delta^3
  Rat norm_killing_disc;
  Rat corestricted_disc;  // disc(K)^3 Nm(2 delta^3)
  std::vector<Int> prime_support;
  std::vector<std::pair<Int, std::vector<PrimeIdeal>>> splitting;
  std::optional<Rat> claimed;
  bool discrepancy = false;
  DeductionReport deduction;
};

/// Throws NotQuadraticOverK unless c1^2 - 4 c0 is totally negative.
CmReport cm_pipeline(const NumberField& K, const FieldElement& c1, const FieldElement& c0,
                     std::optional<Rat> claimed = std::nullopt);

}  // namespace mk3
