#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dyadic/projective.hpp"

namespace dyadic {

struct ScalingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The parameter of phi_a(x) = a x + 1/x. The degenerate a = 0 is rejected.
class MapParam {
 public:
  explicit MapParam(Dyadic a);
  static MapParam parse(std::string_view text, int max_precision = kDefaultPrecision);

  const Dyadic& a() const { return a_; }
  long long va() const { return va_; }  // v2(a)
  int unit_mod8() const { return unit8_; }

 private:
  Dyadic a_;
  long long va_;
  int unit8_;
};

// The seven-way parameter split. Decidable from v2(a), the unit part of a
// mod 8, and the square-root criterion applied to 1 - a.
enum class CaseTag {
  GoodReduction,          // |a| = 1
  ExpandNoSqrt,           // |a| > 1, 1 - a not a square
  ExpandFullShift,        // |a| > 1, 1 - a a square
  ContractSqrtSmall,      // |a| < 1/4, -a a square
  ContractSqrtQuarter,    // |a| = 1/4, -a a square
  ContractMinus3Quarter,  // |a| = 1/4, unit(a) = 3 (mod 8)
  ContractOther,          // all remaining |a| < 1
};

const char* to_string(CaseTag t);

CaseTag classify(const MapParam& m);

// [x : y] -> [a x^2 + y^2 : x y]; phi(0) = phi(inf) = inf.
ProjPoint apply(const MapParam& m, const ProjPoint& p);
// Affine evaluation; x must be a nonzero finite value.
Dyadic apply_affine(const MapParam& m, const Dyadic& x);

// The open annulus sqrt|a| < |x| < 1/sqrt|a| (defined for |a| < 1).
bool in_xa(const MapParam& m, const ProjPoint& p);

enum class FixedType { Attracting, Indifferent, Repelling, Superattracting };
const char* to_string(FixedType t);

struct FixedPoint {
  ProjPoint location;
  Dyadic multiplier;  // phi'(x) at a finite fixed point, 1/a at infinity
  FixedType type;
};

// Infinity is always listed first. Finite fixed points +-1/sqrt(1-a) exist
// iff 1 - a is a nonzero square; both carry multiplier 2a - 1.
struct FixedPointReport {
  std::vector<FixedPoint> points;
};

FixedPointReport fixed_points(const MapParam& m, int precision = kDefaultPrecision);

enum class OrbitEventKind {
  EnteredXa,           // iterate fell into the annulus X_a (|a| < 1 only)
  EscapeCertified,     // monotone growth to infinity holds from here on (|a| > 1)
  CycleDetected,       // exact repetition of a point; exact mode only
  PrecisionExhausted,  // truncated arithmetic ran out of digits
  ExactBudgetDegraded, // exact numerators exceeded the bit cap; switched to truncated
};

const char* to_string(OrbitEventKind k);

struct OrbitEvent {
  OrbitEventKind kind;
  int step;
  int period = 0;  // CycleDetected only
};

struct OrbitStep {
  ProjPoint point;
  std::optional<long long> valuation;  // empty at 0 and infinity
  Abs2 rho_to_infinity;
};

struct OrbitOptions {
  int max_steps = 200;
  bool truncated = false;             // start in truncated mode
  int precision = kDefaultPrecision;  // digits used once truncated
  std::size_t exact_bit_cap = std::size_t{1} << 20;
  bool stop_at_decisive = false;      // break once escape or annulus entry is certified
};

struct OrbitRecord {
  std::vector<OrbitStep> steps;
  std::vector<OrbitEvent> events;

  std::optional<OrbitEvent> first_event(OrbitEventKind k) const;
};

OrbitRecord orbit(const MapParam& m, const ProjPoint& start, const OrbitOptions& opts);

// The constant gamma with |phi(x)-phi(y)| = 2^gamma |x-y| across sampled
// pairs of the given disk (or sphere). Throws ScalingError if the sampled
// pairs do not share a single exponent, or if the region touches 0.
long long expansion_exponent(const MapParam& m, const PRegion& region, int sample_pairs,
                             std::uint64_t seed);

// Orders {r, -r} so that the first element has unit part 1 or 3 (mod 8);
// used to index symmetric pairs of fixed points and disk centers.
std::pair<Dyadic, Dyadic> signed_pair(const Dyadic& r);

}  // namespace dyadic
