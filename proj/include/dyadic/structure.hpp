#pragma once

#include <string>
#include <vector>

#include "dyadic/symbolic.hpp"

namespace dyadic {

enum class VerdictStatus { Julia, Fatou, Unknown };
const char* to_string(VerdictStatus s);

enum class CertificateKind {
  ValuationParity,  // odd v2(x) in the unit-3 quarter case
  TwoPointSet,      // x is 0 or infinity where those are the whole Julia set
  EnteredXa,        // orbit fell into the annulus at `step`
  EscapeCertified,  // monotone growth to infinity from `step`
  CycleInRepeller,  // exact cycle of length `period` that never leaves the Julia locus
  WholeSpaceFatou,  // the case has no Julia points away from {0, inf}
  BudgetExhausted,  // no certificate within the iteration budget
};
const char* to_string(CertificateKind c);

struct Verdict {
  VerdictStatus status;
  CertificateKind certificate;
  int step = -1;    // EnteredXa / EscapeCertified
  int period = 0;   // CycleInRepeller
};

// Membership of x in the Julia set of phi_a, with a certificate. The
// expanding square-root and contracting square-root cases need iteration and
// may return Unknown; the other five cases are decided outright.
Verdict julia_verdict(const MapParam& m, const ProjPoint& x, int budget = 200);

enum class JuliaPayloadKind {
  EmptyJulia,      // good reduction
  AllToInfinity,   // expanding, 1-a not a square: empty Julia set, orbits escape
  CantorFullShift, // expanding, 1-a a square: two disks, full 2-shift
  SubshiftKFX,     // contracting, -a a square: filled Julia set of the family
  OddSpheres,      // unit(a)=3, |a|=1/4: odd spheres plus {0, inf}
  TwoPoints,       // remaining contracting cases: {0, inf}
};
const char* to_string(JuliaPayloadKind k);

struct JuliaDescription {
  CaseTag tag;
  JuliaPayloadKind payload;
  std::optional<DiskFamily> family;
  std::optional<IncidenceMatrix> matrix;
  bool matrix_matches_reference = true;
  std::string routing_rule;  // OddSpheres only
};

JuliaDescription julia_description(const MapParam& m, int precision = kDefaultPrecision);

struct RoutingViolation {
  std::string start;
  long long sphere_log;
  int step;
};

struct RoutingReport {
  int checked = 0;
  std::vector<RoutingViolation> violations;
  bool ok() const { return violations.empty(); }
};

// For the unit-3 quarter case: checks phi^(k-1)(S(0,2^(2k+1))) and
// phi^k(S(0,2^(-2k-1))) land on S(0,2^3) for k = 1..k_max. For the remaining
// contracting cases: checks every sampled nonzero point reaches an invariant
// sphere pair S(0,2^i) u S(0,2^-i) within the analytic step bound and stays
// there.
RoutingReport verify_routing(const MapParam& m, int k_max, int samples_per_sphere,
                             std::uint64_t seed);

// The reduction of phi mod 2^n acting on P^1(Z/2^n): states are pairs [x:1]
// (x any residue) and [1:y] (y even), 3 * 2^(n-1) states in total. Good
// reduction keeps ax^2+y^2 and xy from vanishing together mod 2, so the
// successor map is total and needs no division by 2.
struct LevelDynamics {
  int level;
  std::vector<int> successor;            // state id -> state id
  std::vector<std::vector<int>> cycles;  // disjoint cycles, each a list of ids
  std::vector<int> cycle_of_state;       // -1 for tail states
  std::vector<int> tail_depth;           // per cycle: longest tail feeding it

  int state_count() const { return static_cast<int>(successor.size()); }
  std::string state_name(int id) const;
  // id of the level-(n-1) state under coordinate reduction
  int project(int id) const;
};

LevelDynamics finite_level_dynamics(const MapParam& m, int level);

// pi o phibar_n = phibar_(n-1) o pi over all level-n states.
bool projection_commutes(const LevelDynamics& fine, const LevelDynamics& coarse);
// every level-n cycle projects onto a level-(n-1) cycle
bool cycles_cover(const LevelDynamics& fine, const LevelDynamics& coarse);

}  // namespace dyadic
