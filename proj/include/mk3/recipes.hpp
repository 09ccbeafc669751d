#pragma once

// Baked-in reproduction recipes: the cubic-field quaternion with its
// maximal order (the running example), and the CM discriminant deduction.

#include <optional>
#include <string>
#include <vector>

#include "mk3/corestrict.hpp"
#include "mk3/k3fib.hpp"

namespace mk3 {

struct RunningExample {
  NumberField K;  // x^3 - 3x - 1, theta = b = -(zeta_9 + zeta_9^-1)
  QuaternionAlgebra B;  // (-3, b / K)
  QuatOrder O;          // O_K + O_K zeta + O_K eta + O_K omega
  std::array<QuatElement, 3> trace_zero_basis;  // zeta', eta, omega'
  KMatrix printed_k_gram;
  IntMatrix printed_gram;  // the printed 9x9 matrix, kept as a fixture
};
RunningExample running_example();

struct EntryMismatch {
  std::size_t row, col;
  Int printed, computed;
};

struct Example31Report {
  LambdaCanReport lambda;
  bool k_gram_matches = false;
  std::vector<EntryMismatch> mismatches;  // 9x9 entries differing from the print
  std::vector<Int> disc_group;
  DiscForm disc_form;
  RamificationReport ramification;
  AdmissibilityCertificate admissibility;
  FibrationCertificate fibration;
  FibrationVerdict verdict;
  std::optional<LambdaCanReport> twisted;
};
/// Throws MismatchDetected if det, signature or the discriminant group
/// contradict each other.
Example31Report reproduce_example_3_1(const Rank3Options& options);

/// L = K(zeta_9) = K[y]/(y^2 + t y + 1).
CmReport reproduce_cm();
/// 2^3 * 3^9 * 3^12, as printed.
Int cm_claimed_disc();

}  // namespace mk3
