#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "dyadic/symbolic.hpp"

using namespace dyadic;

namespace {

Dyadic d(long long n) { return Dyadic::from_int(n); }
Dyadic q(long long n, long long m) { return Dyadic::rational(BigInt(n), BigInt(m)); }
MapParam mp(const char* lit) { return MapParam::parse(lit); }
ProjPoint pt(long long n, long long m = 1) { return ProjPoint::finite(q(n, m)); }

uint64_t rng_below(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

// Random point of a disk: center + t * 2^-radius_log, t a random integer.
ProjPoint disk_point(std::mt19937_64& rng, const PRegion& region) {
  PRegion disk = region.canonical();
  BigInt t = BigInt(static_cast<unsigned long long>(rng() >> 32));
  return ProjPoint::finite(disk.center() + Dyadic::from_bigint(t) * dyadic_pow2(-disk.radius_log()));
}

// A point whose first n symbols follow `word`, built by walking preimages
// backwards from the last disk's center.
ProjPoint cylinder_point(const MapParam& m, const DiskFamily& f, const std::vector<int>& word,
                         int precision) {
  Dyadic target = f.members[static_cast<std::size_t>(word.back() - 1)].region.canonical().center();
  for (std::size_t k = word.size() - 1; k-- > 0;) {
    target = preimage_in_disk(m, target, f.members[static_cast<std::size_t>(word[k] - 1)].region,
                              precision);
  }
  return ProjPoint::finite(target);
}

}  // namespace

TEST_CASE("disk family of the expanding square-root case") {
  DiskFamily f = julia_disks(mp("-5/4"));
  REQUIRE(f.size() == 2);
  CHECK(region_equal(f.members[0].region, PRegion::disk(q(2, 3), -3)));
  CHECK(region_equal(f.members[1].region, PRegion::disk(q(-2, 3), -3)));
  CHECK(f.members[0].gamma == 1);
  CHECK(f.locate(pt(2, 3)) == 1);
  CHECK(f.locate(pt(-2, 3)) == 2);
  CHECK(f.locate(pt(1)) == std::nullopt);
  // the common image is D(x1, sqrt|a|/8) and properly contains both disks
  PRegion img = member_image(mp("-5/4"), f.members[0]);
  CHECK(region_equal(img, PRegion::disk(q(2, 3), -2)));
  CHECK(region_equal(img, member_image(mp("-5/4"), f.members[1])));
  CHECK(region_subset(f.members[0].region, img));
  CHECK(region_subset(f.members[1].region, img));
}

TEST_CASE("disk families of the contracting square-root cases") {
  DiskFamily f4 = julia_disks(mp("-4"));
  REQUIRE(f4.size() == 5);
  CHECK(region_equal(f4.members[0].region, PRegion::disk(q(1, 2), -1)));
  CHECK(region_equal(f4.members[1].region, PRegion::disk(q(-1, 2), -1)));
  CHECK(region_equal(f4.members[2].region, PRegion::disk(d(0), -4)));
  CHECK(f4.members[3].region.kind() == PRegion::Kind::OuterDisk);
  CHECK(f4.members[3].region.radius_log() == 3);
  CHECK(region_equal(f4.members[4].region, PRegion::sphere(d(0), 3)));
  CHECK(f4.locate(ProjPoint::infinity()) == 4);
  CHECK(f4.locate(pt(16)) == 3);             // |16| = 1/16, on the rim of D3
  CHECK(f4.locate(pt(8)) == std::nullopt);   // |8| = 1/8 lies between D3 and D1 u D2
  CHECK(f4.locate(pt(32)) == 3);
  CHECK(f4.locate(pt(1, 8)) == 5);           // |1/8| = 8, the extra sphere
  CHECK(f4.locate(pt(1, 16)) == 4);          // |1/16| = 16 > 8

  DiskFamily f16 = julia_disks(mp("-16"));
  REQUIRE(f16.size() == 4);
  CHECK(region_equal(f16.members[0].region, PRegion::disk(q(1, 4), 0)));
  CHECK(region_equal(f16.members[1].region, PRegion::disk(q(-1, 4), 0)));
  CHECK(region_equal(f16.members[2].region, PRegion::disk(d(0), -5)));
  CHECK(f16.members[3].region.radius_log() == 4);
}

TEST_CASE("disk family of the unit-3 quarter case tiles the three spheres") {
  DiskFamily f = julia_disks(mp("12"));
  REQUIRE(f.size() == 4);
  CHECK(region_equal(f.members[0].region, PRegion::disk(q(1, 2), -1)));
  CHECK(region_equal(f.members[1].region, PRegion::disk(q(-1, 2), -1)));
  CHECK(region_equal(f.members[2].region, PRegion::disk(d(8), -4)));
  CHECK(region_equal(f.members[3].region, PRegion::disk(q(1, 8), 2)));
  // D3 and D4 are the spheres S(0,2^-3) and S(0,2^3); D1 u D2 = S(0,2)
  CHECK(region_equal(f.members[2].region, PRegion::sphere(d(0), -3)));
  CHECK(region_equal(f.members[3].region, PRegion::sphere(d(0), 3)));
  CHECK(f.locate(pt(8)) == 3);
  CHECK(f.locate(pt(1, 2)) == 1);
  CHECK(f.locate(pt(-1, 2)) == 2);
  CHECK(f.locate(pt(3, 8)) == 4);
  // images follow the measured exponents
  CHECK(region_equal(member_image(mp("12"), f.members[0]), PRegion::sphere(d(0), -3)));
  CHECK(region_equal(member_image(mp("12"), f.members[2]), f.members[3].region));
  CHECK(region_equal(member_image(mp("12"), f.members[3]), PRegion::sphere(d(0), 1)));
}

TEST_CASE("incidence matrices match the reference constants") {
  CHECK(incidence_matrix(mp("-5/4")) == *expected_matrix(CaseTag::ExpandFullShift));
  CHECK(incidence_matrix(mp("-16")) == *expected_matrix(CaseTag::ContractSqrtSmall));
  CHECK(incidence_matrix(mp("-4")) == *expected_matrix(CaseTag::ContractSqrtQuarter));
  CHECK(incidence_matrix(mp("12")) == *expected_matrix(CaseTag::ContractMinus3Quarter));
  // further parameters in the same cases give the same matrices
  CHECK(incidence_matrix(mp("-64")) == *expected_matrix(CaseTag::ContractSqrtSmall));
  CHECK(incidence_matrix(mp("44")) == *expected_matrix(CaseTag::ContractMinus3Quarter));
  CHECK(incidence_matrix(mp("11/4"), 96) == *expected_matrix(CaseTag::ExpandFullShift));
  CHECK(incidence_matrix(mp("-36")) == *expected_matrix(CaseTag::ContractSqrtQuarter));
  CHECK(expected_matrix(CaseTag::GoodReduction) == std::nullopt);
}

TEST_CASE("irreducibility and admissibility") {
  for (CaseTag tag : {CaseTag::ExpandFullShift, CaseTag::ContractSqrtSmall,
                      CaseTag::ContractSqrtQuarter, CaseTag::ContractMinus3Quarter})
    CHECK(is_irreducible(*expected_matrix(tag)));
  IncidenceMatrix reducible{{{1, 1}, {0, 1}}};
  CHECK_FALSE(is_irreducible(reducible));
  IncidenceMatrix a = *expected_matrix(CaseTag::ContractSqrtSmall);
  CHECK(admissible(a, {1, 3, 4, 4, 1}));
  CHECK_FALSE(admissible(a, {3, 1}));  // entry (3,1) is 0
  CHECK_FALSE(admissible(a, {0, 1}));
  CHECK(admissible(a, {2}));
}

TEST_CASE("overlapping families are rejected") {
  DiskFamily bad{CaseTag::ExpandFullShift,
                 {{PRegion::disk(q(2, 3), -3), ImageRuleKind::ScalingDisk, 1},
                  {PRegion::disk(q(2, 3), -2), ImageRuleKind::ScalingDisk, 1}}};
  CHECK_THROWS_AS(incidence_from_family(mp("-5/4"), bad), FamilyError);
}

TEST_CASE("a wrong stamped exponent is caught") {
  DiskFamily bad{CaseTag::ExpandFullShift,
                 {{PRegion::disk(q(2, 3), -3), ImageRuleKind::ScalingDisk, 5},
                  {PRegion::disk(q(-2, 3), -3), ImageRuleKind::ScalingDisk, 1}}};
  CHECK_THROWS_AS(incidence_from_family(mp("-5/4"), bad), FamilyError);
}

TEST_CASE("itineraries follow the orbit through the family") {
  MapParam m = mp("-5/4");
  Itinerary it1 = itinerary(m, pt(2, 3), 6);
  CHECK(it1.symbols == std::vector<int>{1, 1, 1, 1, 1, 1});
  Itinerary it2 = itinerary(m, pt(-2, 3), 4);
  CHECK(it2.symbols == std::vector<int>{2, 2, 2, 2});

  MapParam m12 = mp("12");
  Itinerary it3 = itinerary(m12, pt(8), 7);
  REQUIRE(it3.certified_length() == 7);
  CHECK(it3.symbols[0] == 3);
  CHECK(it3.symbols[1] == 4);
  CHECK((it3.symbols[2] == 1 || it3.symbols[2] == 2));
  CHECK(it3.symbols[3] == 3);
  CHECK(admissible(*expected_matrix(CaseTag::ContractMinus3Quarter), it3.symbols));

  // a point that leaves the family certifies a shorter prefix
  Itinerary it4 = itinerary(m, pt(1, 2), 6);
  CHECK(it4.certified_length() < 6);
}

TEST_CASE("preimages inside chosen disks") {
  MapParam m = mp("-5/4");
  DiskFamily f = julia_disks(m);
  Dyadic p1 = preimage_in_disk(m, q(2, 3), f.members[0].region);
  CHECK(p1 == q(2, 3));
  Dyadic p2 = preimage_in_disk(m, q(2, 3), f.members[1].region);
  CHECK(p2 == q(-6, 5));
  CHECK(apply_affine(m, p2) == q(2, 3));
  CHECK_THROWS_AS(preimage_in_disk(m, q(2, 3), PRegion::disk(d(5), -3)), FamilyError);
}

TEST_CASE("cylinder points realize every short word") {
  MapParam m = mp("-5/4");
  DiskFamily f = julia_disks(m);
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<int> word;
    for (int k = 0; k < 4; ++k) word.push_back(((bits >> k) & 1) + 1);
    ProjPoint x = cylinder_point(m, f, word, 96);
    Itinerary it = itinerary(m, x, 4, f);
    CAPTURE(bits);
    CHECK(it.symbols == word);
  }
}

TEST_CASE("conjugacy: the itinerary map intertwines phi with the shift") {
  MapParam m = mp("-5/4");
  DiskFamily f = julia_disks(m);
  std::mt19937_64 rng(2718);
  std::vector<ProjPoint> samples;
  // cylinder points survive all 8 steps; plain disk points may exit early
  for (int i = 0; i < 50; ++i) {
    std::vector<int> word;
    for (int k = 0; k < 8; ++k) word.push_back(static_cast<int>(rng_below(rng, 2)) + 1);
    samples.push_back(cylinder_point(m, f, word, 128));
  }
  for (int i = 0; i < 30; ++i)
    samples.push_back(disk_point(rng, f.members[rng_below(rng, 2)].region));
  samples.push_back(pt(2, 3));
  ConjugacyReport rep = verify_conjugacy(m, samples, 8, f);
  CHECK(rep.ok());
  CHECK(rep.samples == 81);
  CHECK(rep.surviving >= 51);
  CHECK(rep.separation_checked);
}

TEST_CASE("weak repeller report for the unit-3 quarter case") {
  MapParam m = mp("12");
  WeakRepellerReport rep = check_weak_repeller(m, julia_disks(m), 48, 7);
  REQUIRE(rep.exponents.size() == 4);
  CHECK(rep.exponents[0] == -3);
  CHECK(rep.exponents[1] == -3);
  CHECK(rep.exponents[2] == 6);
  CHECK(rep.exponents[3] == -2);
  CHECK(rep.ok());
  CHECK(rep.transitive);
  CHECK(rep.matrix == *expected_matrix(CaseTag::ContractMinus3Quarter));
  CHECK(rep.tau == 4);
  CHECK(rep.rescale_shift[0] == 3);
  CHECK(rep.rescale_shift[2] == 0);
  CHECK(rep.rescale_shift[3] == 6);
}

TEST_CASE("weak repeller report for the full-shift case") {
  MapParam m = mp("-5/4");
  WeakRepellerReport rep = check_weak_repeller(m, julia_disks(m), 48, 8);
  CHECK(rep.exponents[0] == 1);
  CHECK(rep.exponents[1] == 1);
  CHECK(rep.ok());
  CHECK(rep.condition_proper);
  CHECK(rep.transitive);
  CHECK(rep.matrix == *expected_matrix(CaseTag::ExpandFullShift));
}

TEST_CASE("weak repeller conditions fail for a drifting family") {
  MapParam m = mp("-5/4");
  DiskFamily stray{CaseTag::ExpandFullShift,
                   {{PRegion::disk(d(1), -3), ImageRuleKind::ScalingDisk, std::nullopt},
                    {PRegion::disk(d(5), -3), ImageRuleKind::ScalingDisk, std::nullopt}}};
  WeakRepellerReport rep = check_weak_repeller(m, stray, 32, 9);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.condition_contains);
  CHECK(rep.failed_members.size() == 2);
}

TEST_CASE("observed itinerary successors are exactly the matrix rows") {
  for (const char* lit : {"12", "-4", "-16", "-5/4"}) {
    MapParam m = mp(lit);
    DiskFamily f = julia_disks(m);
    IncidenceMatrix a = incidence_from_family(m, f);
    std::mt19937_64 rng(404);
    for (int i = 0; i < f.size(); ++i) {
      if (f.members[static_cast<std::size_t>(i)].rule != ImageRuleKind::ScalingDisk) continue;
      std::set<int> observed;
      for (int k = 0; k < 200; ++k) {
        ProjPoint x = disk_point(rng, f.members[static_cast<std::size_t>(i)].region);
        auto next = f.locate(apply(m, x));
        if (next) observed.insert(*next);
      }
      std::set<int> allowed;
      for (int j = 0; j < f.size(); ++j)
        if (a.at(i, j)) allowed.insert(j + 1);
      CAPTURE(lit);
      CAPTURE(i);
      CHECK(observed == allowed);
    }
  }
}
