#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dyadic/dynamics.hpp"

using namespace dyadic;

namespace {

Dyadic d(long long n) { return Dyadic::from_int(n); }
Dyadic q(long long n, long long m) { return Dyadic::rational(BigInt(n), BigInt(m)); }
MapParam mp(const char* lit) { return MapParam::parse(lit); }
ProjPoint pt(long long n, long long m = 1) { return ProjPoint::finite(q(n, m)); }

uint64_t rng_below(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

// Random point on the sphere S(0, 2^i): 2^-i times a random odd unit.
Dyadic on_sphere(std::mt19937_64& rng, long long i) {
  BigInt u = 2 * BigInt(static_cast<unsigned long long>(rng() >> 24)) + 1;
  return Dyadic::from_bigint(u) * dyadic_pow2(-i);
}

}  // namespace

TEST_CASE("parameter classification") {
  CHECK(classify(mp("-5/4")) == CaseTag::ExpandFullShift);   // 1-a = 9/4 = (3/2)^2
  CHECK(classify(mp("-1/4")) == CaseTag::ExpandNoSqrt);      // 1-a = 5/4, unit 5
  CHECK(classify(mp("-4")) == CaseTag::ContractSqrtQuarter);
  CHECK(classify(mp("-16")) == CaseTag::ContractSqrtSmall);
  CHECK(classify(mp("12")) == CaseTag::ContractMinus3Quarter);
  CHECK(classify(mp("20")) == CaseTag::ContractOther);       // unit 5
  CHECK(classify(mp("2")) == CaseTag::ContractOther);        // odd valuation
  CHECK(classify(mp("3")) == CaseTag::GoodReduction);
  CHECK(classify(mp("1")) == CaseTag::GoodReduction);
  CHECK(classify(mp("11/4")) == CaseTag::ExpandFullShift);   // 1-a = -7/4, -7 = 1 mod 8
  CHECK(classify(mp("44")) == CaseTag::ContractMinus3Quarter);
  CHECK_THROWS_AS(MapParam(Dyadic::zero()), DomainError);
}

TEST_CASE("classification is a residue-level decision") {
  // multiplying a by the square of any unit with unit part 1 mod 8 keeps the tag
  std::mt19937_64 rng(11);
  const char* lits[] = {"-5/4", "-1/4", "-4", "-16", "12", "20", "2", "3"};
  for (const char* lit : lits) {
    MapParam base = mp(lit);
    CaseTag tag = classify(base);
    for (int i = 0; i < 20; ++i) {
      BigInt u = 8 * BigInt(static_cast<unsigned long long>(rng_below(rng, 1 << 20))) + 1;
      MapParam scaled(base.a() * Dyadic::from_bigint(u));
      CHECK(classify(scaled) == tag);
    }
  }
}

TEST_CASE("evaluation of the map") {
  MapParam m = mp("-5/4");
  CHECK(apply(m, pt(2, 3)) == pt(2, 3));  // fixed point
  CHECK(apply(m, pt(0)) == ProjPoint::infinity());
  CHECK(apply(m, ProjPoint::infinity()) == ProjPoint::infinity());
  CHECK(apply(mp("2"), pt(1, 8)) == pt(33, 4));
  CHECK(apply(mp("2"), pt(1, 8)).value().abs2() == Abs2::pow2(2));  // |a| * 2^3
}

TEST_CASE("difference identity phi(x)-phi(y) = (a - 1/xy)(x-y)") {
  std::mt19937_64 rng(3);
  MapParam ms[] = {mp("-5/4"), mp("12"), mp("3"), mp("2")};
  for (const MapParam& m : ms) {
    for (int i = 0; i < 100; ++i) {
      Dyadic x = q(1 + static_cast<long long>(rng_below(rng, 4000)),
                   1 + static_cast<long long>(rng_below(rng, 50)));
      Dyadic y = q(1 + static_cast<long long>(rng_below(rng, 4000)),
                   1 + static_cast<long long>(rng_below(rng, 50)));
      if (x == y) continue;
      Dyadic lhs = apply_affine(m, x) - apply_affine(m, y);
      Dyadic rhs = (m.a() - Dyadic::from_int(1) / (x * y)) * (x - y);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("sphere routing laws") {
  std::mt19937_64 rng(17);
  for (const char* lit : {"2", "12", "-16", "20"}) {
    MapParam m = mp(lit);
    long long v = m.va();
    // |x| = 2^i with i > v/2: |phi(x)| = |a| 2^i
    for (long long i = v / 2 + 1; i <= v / 2 + 4; ++i) {
      for (int k = 0; k < 25; ++k) {
        Dyadic x = on_sphere(rng, i);
        CHECK(apply_affine(m, x).valuation() == -i + v);
      }
    }
    // i <= 0: |phi(x)| = 2^-i
    for (long long i = 0; i >= -3; --i) {
      for (int k = 0; k < 25; ++k) {
        Dyadic x = on_sphere(rng, i);
        CHECK(apply_affine(m, x).valuation() == i);
      }
    }
  }
}

TEST_CASE("second iterate is 1-Lipschitz on the invariant sphere pairs") {
  std::mt19937_64 rng(19);
  for (const char* lit : {"2", "12", "-16", "20", "8"}) {
    MapParam m = mp(lit);
    long long bound = (m.va() - 1) / 2;
    for (long long i = -bound; i <= bound; ++i) {
      for (int k = 0; k < 30; ++k) {
        long long jx = rng_below(rng, 2) ? i : -i;
        long long jy = rng_below(rng, 2) ? i : -i;
        Dyadic x = on_sphere(rng, jx);
        Dyadic y = on_sphere(rng, jy);
        if (x == y) continue;
        // phi(S(0,2^j)) inside S(0,2^-j)
        CHECK(apply_affine(m, x).valuation() == jx);
        ProjPoint px = ProjPoint::finite(x), py = ProjPoint::finite(y);
        ProjPoint qx = apply(m, apply(m, px)), qy = apply(m, apply(m, py));
        CHECK(spherical_distance(qx, qy) <= spherical_distance(px, py));
      }
    }
  }
}

TEST_CASE("fixed points of the expanding square-root case") {
  FixedPointReport r = fixed_points(mp("-5/4"));
  REQUIRE(r.points.size() == 3);
  CHECK(r.points[0].location.is_infinity());
  CHECK(r.points[0].type == FixedType::Attracting);
  CHECK(r.points[0].multiplier == q(-4, 5));
  CHECK(r.points[1].location == pt(2, 3));
  CHECK(r.points[2].location == pt(-2, 3));
  for (int i : {1, 2}) {
    CHECK(r.points[i].multiplier == q(-7, 2));
    CHECK(r.points[i].multiplier.abs2() == Abs2::pow2(1));
    CHECK(r.points[i].type == FixedType::Repelling);
    CHECK(apply(mp("-5/4"), r.points[i].location) == r.points[i].location);
  }
}

TEST_CASE("fixed points in the other cases") {
  FixedPointReport r3 = fixed_points(mp("3"));
  CHECK(r3.points.size() == 1);  // 1/(1-3) has odd valuation
  CHECK(r3.points[0].location.is_infinity());
  CHECK(r3.points[0].type == FixedType::Indifferent);

  FixedPointReport r1 = fixed_points(mp("1"));  // ax + 1/x = x forces 1/x = 0
  CHECK(r1.points.size() == 1);

  FixedPointReport rm3 = fixed_points(mp("-3"));
  REQUIRE(rm3.points.size() == 3);  // 1-a = 4
  CHECK(rm3.points[0].type == FixedType::Indifferent);  // multiplier 1/a, a unit
  CHECK(rm3.points[1].location == pt(1, 2));            // unit of 1/2 is 1; of -1/2 is 7
  CHECK(rm3.points[1].multiplier == d(-7));
  CHECK(rm3.points[1].type == FixedType::Indifferent);
}

TEST_CASE("fixed point verification across random square-case parameters") {
  std::mt19937_64 rng(23);
  int found = 0;
  for (int i = 0; i < 400; ++i) {
    long long n = 1 + static_cast<long long>(rng_below(rng, 1 << 10));
    long long de = 1 + static_cast<long long>(rng_below(rng, 1 << 6));
    Dyadic a = q(rng_below(rng, 2) ? n : -n, de);
    if (a.is_zero() || (Dyadic::from_int(1) - a).is_zero()) continue;
    MapParam m(a);
    if (!sqrt_exists(Dyadic::from_int(1) - a)) continue;
    FixedPointReport r = fixed_points(m, 96);
    REQUIRE(r.points.size() == 3);
    for (int j : {1, 2}) {
      const ProjPoint& x = r.points[j].location;
      if (x.value().is_exact()) {
        CHECK(apply(m, x) == x);
      } else {
        CHECK(apply(m, x).value().agrees_with(x.value()));
      }
      ++found;
    }
  }
  CHECK(found > 50);
}

TEST_CASE("orbit events: escape for an expanding parameter") {
  OrbitRecord rec = orbit(mp("-1/4"), pt(1), {.max_steps = 20, .exact_bit_cap = 1 << 12});
  auto esc = rec.first_event(OrbitEventKind::EscapeCertified);
  REQUIRE(esc.has_value());
  CHECK(esc->step == 0);
  // rho to infinity is non-increasing and ends tiny
  for (std::size_t i = 1; i < rec.steps.size(); ++i)
    CHECK(rec.steps[i].rho_to_infinity <= rec.steps[i - 1].rho_to_infinity);
  CHECK(rec.steps.back().rho_to_infinity < Abs2::pow2(-8));
}

TEST_CASE("orbit events: annulus entry and exact cycles") {
  OrbitRecord rec = orbit(mp("12"), pt(1), {.max_steps = 5});
  auto xa = rec.first_event(OrbitEventKind::EnteredXa);
  REQUIRE(xa.has_value());
  CHECK(xa->step == 0);  // |1| = 1 sits inside (1/2, 2)

  OrbitRecord fix = orbit(mp("-5/4"), pt(2, 3), {.max_steps = 10});
  auto cyc = fix.first_event(OrbitEventKind::CycleDetected);
  REQUIRE(cyc.has_value());
  CHECK(cyc->period == 1);

  OrbitRecord zero = orbit(mp("12"), pt(0), {.max_steps = 10});
  auto inf_cycle = zero.first_event(OrbitEventKind::CycleDetected);
  REQUIRE(inf_cycle.has_value());  // 0 -> inf -> inf
  CHECK(inf_cycle->period == 1);
  CHECK_FALSE(zero.first_event(OrbitEventKind::EnteredXa).has_value());
}

TEST_CASE("orbit degrades to truncated mode under the bit cap") {
  OrbitRecord rec = orbit(mp("7/4"), pt(3), {.max_steps = 40, .precision = 64, .exact_bit_cap = 1 << 10});
  CHECK(rec.first_event(OrbitEventKind::ExactBudgetDegraded).has_value());
  CHECK(rec.steps.size() == 41);  // keeps iterating after the switch
  // the escape certificate still holds and valuations keep dropping
  CHECK(rec.first_event(OrbitEventKind::EscapeCertified)->step == 0);
  CHECK(rec.steps.back().valuation.value() < -60);
}

TEST_CASE("expansion exponents of the reference disks") {
  // |phi(x)-phi(y)| = (|a|/2) |x-y| on the disks around the fixed points
  CHECK(expansion_exponent(mp("-5/4"), PRegion::disk(q(2, 3), -3), 60, 1) == 1);
  CHECK(expansion_exponent(mp("-5/4"), PRegion::disk(q(-2, 3), -3), 60, 2) == 1);
  CHECK(expansion_exponent(mp("-4"), PRegion::disk(q(1, 2), -1), 60, 3) == -3);
  CHECK(expansion_exponent(mp("-4"), PRegion::disk(q(-1, 2), -1), 60, 4) == -3);
  // spheres routed by the absolute-value laws
  CHECK(expansion_exponent(mp("2"), PRegion::sphere(d(0), 3), 60, 5) == -1);
  CHECK(expansion_exponent(mp("12"), PRegion::disk(d(8), -4), 60, 6) == 6);
  CHECK(expansion_exponent(mp("12"), PRegion::disk(q(1, 8), 2), 60, 7) == -2);
  CHECK(expansion_exponent(mp("12"), PRegion::disk(q(1, 2), -1), 60, 8) == -3);
  // no single exponent across a region containing 0
  CHECK_THROWS_AS(expansion_exponent(mp("12"), PRegion::disk(d(0), -4), 60, 9), ScalingError);
  // too-large region mixes exponents
  CHECK_THROWS_AS(expansion_exponent(mp("12"), PRegion::disk(q(1, 8), 6), 200, 10), ScalingError);
}
