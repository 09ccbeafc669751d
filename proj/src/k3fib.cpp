#include "mk3/k3fib.hpp"

#include "mk3/errors.hpp"

namespace mk3 {

K3Context K3Context::from_transcendental(IntLattice T) {
  if (T.rank() != 9) throw Error(ErrorKind::BadSignature, "transcendental lattice must have rank 9, got " + std::to_string(T.rank()));
  Inertia s = T.signature();
  if (s.positive != 2 || s.negative != 7)
    throw Error(ErrorKind::BadSignature, "signature must be (2, 7), got (" + std::to_string(s.positive) + ", " +
                                             std::to_string(s.negative) + ")");
  if (!T.is_even()) throw Error(ErrorKind::OddLattice, "transcendental lattice must be even");
  K3Context ctx;
  ctx.picard_disc_group = T.disc_group();
  ctx.transcendental = std::move(T);
  return ctx;
}

FibrationCertificate fibration_exists(const K3Context& ctx) {
  FibrationCertificate c;
  c.lambda = length(ctx.picard_disc_group).lambda;
  c.picard_rank = ctx.picard_rank;
  c.exists = c.picard_rank >= c.lambda + 3;
  c.inequality = std::to_string(c.picard_rank) + (c.exists ? " >= " : " < ") + std::to_string(c.lambda) + " + 3";
  return c;
}

std::string to_string(TorsionGroup g) { return g == TorsionGroup::Trivial ? "trivial" : "Z/2"; }

TorsionGroup parse_torsion_group(const std::string& s) {
  if (s == "trivial" || s == "0" || s == "1") return TorsionGroup::Trivial;
  if (s == "Z/2" || s == "Z/2Z" || s == "Z2") return TorsionGroup::Z2;
  throw Error(ErrorKind::UnsupportedGroup, "torsion group '" + s + "' is not supported (only trivial and Z/2)");
}

std::vector<TorsionCandidate> two_torsion_candidates() {
  return {{ADEConfig::parse("8A1"), TorsionGroup::Z2},
          {ADEConfig::parse("9A1"), TorsionGroup::Z2},
          {ADEConfig::parse("A3+6A1"), TorsionGroup::Z2}};
}

bool torsion_overlattice_check(const ADEConfig& config, TorsionGroup G) {
  if (G == TorsionGroup::Trivial) return true;
  DiscForm F = disc_form(ade_lattice(config, Sign::Negative));
  for (const auto& H : isotropic_subgroups(F, 2))
    if (H.order() == 2) return true;
  return false;
}

FibrationVerdict mw_torsion_verdict(const K3Context& ctx, const Rank3Options& options) {
  FibrationVerdict v;
  FibrationCertificate cert = fibration_exists(ctx);
  v.fibration = cert.exists;
  v.lambda = cert.lambda;
  v.torsion = {TorsionGroup::Trivial};
  v.notes.push_back("fibration certificate: " + cert.inequality);
  if (v.lambda > 3) {
    v.notes.push_back("length obstruction: lambda = " + std::to_string(v.lambda) + " > 3");
    return v;
  }
  DiscForm F = disc_form(ctx.transcendental);
  bool yes = false, unknown = false;
  const DiscForm variants[2] = {F, negate(F)};
  const char* names[2] = {"q_T", "-q_T"};
  for (int k = 0; k < 2; ++k) {
    Rank3Result r = rank3_realizable(variants[k], 0, 3, options);
    v.notes.push_back(std::string("rank-3 search on ") + names[k] + ": " + to_string(r.status) + " (" + r.reason + ")");
    if (r.status == Rank3Result::Status::Yes) yes = true;
    if (r.status == Rank3Result::Status::Unknown) unknown = true;
    v.searches.push_back(std::move(r));
  }
  if (yes) {
    v.torsion.push_back(TorsionGroup::Z2);
    v.configs.push_back(ADEConfig::parse("8A1"));
  } else if (unknown) {
    v.notes.push_back("unknown at bound " + std::to_string(options.bound));
  }
  return v;
}

}  // namespace mk3
