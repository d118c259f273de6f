#include "dyadic/dynamics.hpp"

#include <random>
#include <unordered_map>

namespace dyadic {

MapParam::MapParam(Dyadic a) : a_(std::move(a)) {
  if (a_.is_zero()) throw DomainError("phi_a is degenerate at a = 0");
  va_ = a_.valuation();
  unit8_ = a_.unit_mod8();
}

MapParam MapParam::parse(std::string_view text, int max_precision) {
  return MapParam(Dyadic::parse(text, max_precision));
}

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::GoodReduction: return "GoodReduction";
    case CaseTag::ExpandNoSqrt: return "ExpandNoSqrt";
    case CaseTag::ExpandFullShift: return "ExpandFullShift";
    case CaseTag::ContractSqrtSmall: return "ContractSqrtSmall";
    case CaseTag::ContractSqrtQuarter: return "ContractSqrtQuarter";
    case CaseTag::ContractMinus3Quarter: return "ContractMinus3Quarter";
    case CaseTag::ContractOther: return "ContractOther";
  }
  return "?";
}

CaseTag classify(const MapParam& m) {
  long long v = m.va();
  if (v == 0) return CaseTag::GoodReduction;
  if (v < 0)
    return sqrt_exists(Dyadic::from_int(1) - m.a()) ? CaseTag::ExpandFullShift
                                                    : CaseTag::ExpandNoSqrt;
  if (v % 2 == 0 && sqrt_exists(-m.a()))
    return v == 2 ? CaseTag::ContractSqrtQuarter : CaseTag::ContractSqrtSmall;
  if (v == 2 && m.unit_mod8() == 3) return CaseTag::ContractMinus3Quarter;
  return CaseTag::ContractOther;
}

Dyadic apply_affine(const MapParam& m, const Dyadic& x) {
  return m.a() * x + Dyadic::from_int(1) / x;
}

ProjPoint apply(const MapParam& m, const ProjPoint& p) {
  const Dyadic& x = p.coord1();
  const Dyadic& y = p.coord2();
  return ProjPoint::from_coords(m.a() * x * x + y * y, x * y);
}

bool in_xa(const MapParam& m, const ProjPoint& p) {
  if (m.va() <= 0) return false;
  if (p.is_infinity()) return false;
  Dyadic z = p.value();
  if (z.is_zero()) return false;
  long long vz = z.valuation();
  return 2 * std::abs(vz) < m.va();
}

const char* to_string(FixedType t) {
  switch (t) {
    case FixedType::Attracting: return "attracting";
    case FixedType::Indifferent: return "indifferent";
    case FixedType::Repelling: return "repelling";
    case FixedType::Superattracting: return "superattracting";
  }
  return "?";
}

namespace {

FixedType type_of_multiplier(const Dyadic& mult) {
  if (mult.is_zero()) return FixedType::Superattracting;
  long long v = mult.valuation();
  if (v > 0) return FixedType::Attracting;
  if (v == 0) return FixedType::Indifferent;
  return FixedType::Repelling;
}

}  // namespace

std::pair<Dyadic, Dyadic> signed_pair(const Dyadic& r) {
  int u = r.unit_mod8();
  if (u == 1 || u == 3) return {r, -r};
  return {-r, r};
}

FixedPointReport fixed_points(const MapParam& m, int precision) {
  FixedPointReport report;
  Dyadic inv_a = Dyadic::from_int(1) / m.a();
  report.points.push_back({ProjPoint::infinity(), inv_a, type_of_multiplier(inv_a)});
  Dyadic one_minus_a = Dyadic::from_int(1) - m.a();
  if (one_minus_a.is_zero() || !sqrt_exists(one_minus_a)) return report;
  // x^2 = 1/(1-a)
  Dyadic root = dyadic_sqrt(Dyadic::from_int(1) / one_minus_a, precision);
  Dyadic mult = Dyadic::from_int(2) * m.a() - Dyadic::from_int(1);
  FixedType ty = type_of_multiplier(mult);
  auto [first, second] = signed_pair(root);
  report.points.push_back({ProjPoint::finite(first), mult, ty});
  report.points.push_back({ProjPoint::finite(second), mult, ty});
  return report;
}

const char* to_string(OrbitEventKind k) {
  switch (k) {
    case OrbitEventKind::EnteredXa: return "EnteredXa";
    case OrbitEventKind::EscapeCertified: return "EscapeCertified";
    case OrbitEventKind::CycleDetected: return "CycleDetected";
    case OrbitEventKind::PrecisionExhausted: return "PrecisionExhausted";
    case OrbitEventKind::ExactBudgetDegraded: return "ExactBudgetDegraded";
  }
  return "?";
}

std::optional<OrbitEvent> OrbitRecord::first_event(OrbitEventKind k) const {
  for (const OrbitEvent& e : events)
    if (e.kind == k) return e;
  return std::nullopt;
}

namespace {

// Monotone growth to infinity is guaranteed for |a| > 1 everywhere except on
// the sphere |x| = 1/sqrt|a| (which only exists for even v2(a)): off it,
// |phi(x)| = max(|ax|, 1/|x|) > 1, and from |x| > 1 every step multiplies the
// absolute value by |a|.
bool escape_certified(const MapParam& m, const ProjPoint& p) {
  if (m.va() >= 0) return false;
  if (p.is_infinity()) return true;
  Dyadic z = p.value();
  if (z.is_zero()) return true;  // 0 -> inf in one step
  return z.valuation() != -m.va() / 2;
}

std::optional<long long> point_valuation(const ProjPoint& p) {
  if (p.is_infinity()) return std::nullopt;
  Dyadic z = p.value();
  if (z.is_zero()) return std::nullopt;
  return z.valuation();
}

}  // namespace

OrbitRecord orbit(const MapParam& m, const ProjPoint& start, const OrbitOptions& opts) {
  if (opts.max_steps < 1) throw DomainError("orbit: max_steps must be positive");
  OrbitRecord rec;
  bool exact_mode = !opts.truncated;
  ProjPoint cur = start;
  if (!exact_mode && !cur.is_infinity() && !cur.value().is_zero() && cur.value().is_exact())
    cur = ProjPoint::finite(cur.value().to_approx(opts.precision));
  std::unordered_map<std::string, int> seen;
  bool entered_xa = false, escaped = false;
  for (int step = 0; step <= opts.max_steps; ++step) {
    if (exact_mode && !cur.is_infinity()) {
      Dyadic z = cur.value();
      if (!z.is_zero() && z.exact_bits() > opts.exact_bit_cap) {
        cur = ProjPoint::finite(z.to_approx(opts.precision));
        rec.events.push_back({OrbitEventKind::ExactBudgetDegraded, step});
        exact_mode = false;
        seen.clear();
      }
    }
    rec.steps.push_back({cur, point_valuation(cur), spherical_distance(cur, ProjPoint::infinity())});
    if (!entered_xa && in_xa(m, cur)) {
      rec.events.push_back({OrbitEventKind::EnteredXa, step});
      entered_xa = true;
    }
    if (!escaped && escape_certified(m, cur)) {
      rec.events.push_back({OrbitEventKind::EscapeCertified, step});
      escaped = true;
    }
    if (opts.stop_at_decisive && (entered_xa || escaped)) break;
    if (exact_mode) {
      auto [it, inserted] = seen.emplace(cur.str(), step);
      if (!inserted) {
        rec.events.push_back({OrbitEventKind::CycleDetected, step, step - it->second});
        break;
      }
    }
    if (step == opts.max_steps) break;
    try {
      cur = apply(m, cur);
    } catch (const PrecisionError&) {
      rec.events.push_back({OrbitEventKind::PrecisionExhausted, step + 1});
      break;
    }
  }
  return rec;
}

long long expansion_exponent(const MapParam& m, const PRegion& region, int sample_pairs,
                             std::uint64_t seed) {
  PRegion disk = region.canonical();
  if (disk.kind() != PRegion::Kind::Disk)
    throw ScalingError("expansion_exponent: need a disk or sphere");
  if (!(disk.center().abs2() > Abs2::pow2(disk.radius_log())))
    throw ScalingError("expansion_exponent: region touches 0");
  std::mt19937_64 rng(seed);
  auto sample = [&]() {
    // center + t * 2^-radius_log with a 24-bit t: offsets cover |t| <= radius
    // with valuations spread over 24 levels.
    BigInt t = BigInt(static_cast<unsigned long long>(rng() >> 40));
    return disk.center() + Dyadic::from_bigint(t) * dyadic_pow2(-disk.radius_log());
  };
  std::optional<long long> gamma;
  for (int i = 0; i < sample_pairs; ++i) {
    Dyadic x = sample(), y = sample();
    Dyadic diff = x - y;
    if (diff.is_zero()) continue;
    Dyadic img = apply_affine(m, x) - apply_affine(m, y);
    if (img.is_zero()) throw ScalingError("expansion_exponent: map not injective on samples");
    long long g = diff.valuation() - img.valuation();  // |img| = 2^g |diff|
    if (gamma && *gamma != g)
      throw ScalingError("expansion_exponent: no single scaling exponent on this region");
    gamma = g;
  }
  if (!gamma) throw ScalingError("expansion_exponent: no usable sample pairs");
  return *gamma;
}

}  // namespace dyadic
