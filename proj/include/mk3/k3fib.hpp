#pragma once

// K3-level bookkeeping on a rank-9 transcendental lattice of signature
// (2, 7): existence of elliptic fibrations with section (Nikulin's length
// bound), the 2-torsion ADE configurations, and the Mordell-Weil torsion
// verdict through rank-3 realizability of the discriminant form.

#include <optional>
#include <string>
#include <vector>

#include "mk3/lattice.hpp"

namespace mk3 {

struct K3Context {
  IntLattice transcendental;
  int picard_rank = 13;
  std::vector<Int> picard_disc_group;  // same invariant factors as the transcendental side

  /// Throws BadSignature unless rank 9, signature (2, 7); OddLattice if odd.
  static K3Context from_transcendental(IntLattice T);
};

struct FibrationCertificate {
  bool exists = false;
  int lambda = 0;
  int picard_rank = 13;
  std::string inequality;  // "13 >= 9 + 3"
};
FibrationCertificate fibration_exists(const K3Context& ctx);

enum class TorsionGroup { Trivial, Z2 };
std::string to_string(TorsionGroup g);
/// "trivial", "Z/2"; anything else throws UnsupportedGroup.
TorsionGroup parse_torsion_group(const std::string& s);

struct TorsionCandidate {
  ADEConfig config;
  TorsionGroup group = TorsionGroup::Z2;
};
/// 8A1, 9A1 and A3+6A1, each with torsion Z/2.
std::vector<TorsionCandidate> two_torsion_candidates();

/// Whether disc_form(config, negative) has an isotropic subgroup
/// isomorphic to G.
bool torsion_overlattice_check(const ADEConfig& config, TorsionGroup G);

struct FibrationVerdict {
  bool fibration = false;
  int lambda = 0;
  std::vector<TorsionGroup> torsion;
  std::vector<ADEConfig> configs;
  std::vector<std::string> notes;
  /// Searches run for q_T and -q_T (only when lambda <= 3).
  std::vector<Rank3Result> searches;
};
FibrationVerdict mw_torsion_verdict(const K3Context& ctx, const Rank3Options& options);

}  // namespace mk3
