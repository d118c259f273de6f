#include "dyadic/symbolic.hpp"

#include <algorithm>

namespace dyadic {

std::optional<int> DiskFamily::locate(const ProjPoint& x) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i].region.contains(x)) return static_cast<int>(i) + 1;
  return std::nullopt;
}

namespace {

FamilyMember scaling_disk(const Dyadic& center, long long radius_log, long long gamma) {
  return {PRegion::disk(center, radius_log), ImageRuleKind::ScalingDisk, gamma};
}

}  // namespace

DiskFamily julia_disks(const MapParam& m, int precision) {
  CaseTag tag = classify(m);
  long long v = m.va();
  DiskFamily f{tag, {}};
  switch (tag) {
    case CaseTag::ExpandFullShift: {
      // two disks of radius 1/(4 sqrt|a|) around the fixed points +-1/sqrt(1-a)
      Dyadic root = dyadic_sqrt(Dyadic::from_int(1) / (Dyadic::from_int(1) - m.a()), precision);
      auto [c1, c2] = signed_pair(root);
      long long r = v / 2 - 2, gamma = -v - 1;
      f.members.push_back(scaling_disk(c1, r, gamma));
      f.members.push_back(scaling_disk(c2, r, gamma));
      return f;
    }
    case CaseTag::ContractSqrtSmall:
    case CaseTag::ContractSqrtQuarter: {
      Dyadic root = dyadic_sqrt(-m.a(), precision);
      auto [c1, c2] = signed_pair(Dyadic::from_int(1) / root);
      long long r = v / 2 - 2, gamma = -v - 1;
      f.members.push_back(scaling_disk(c1, r, gamma));
      f.members.push_back(scaling_disk(c2, r, gamma));
      f.members.push_back({PRegion::disk(Dyadic::zero(), -v / 2 - 3), ImageRuleKind::InversionDisk, {}});
      f.members.push_back({PRegion::outer_disk(v / 2 + 2), ImageRuleKind::OuterRegion, {}});
      if (tag == CaseTag::ContractSqrtQuarter)
        f.members.push_back({PRegion::sphere(Dyadic::zero(), v / 2 + 2), ImageRuleKind::SphereMap, -v});
      return f;
    }
    case CaseTag::ContractMinus3Quarter: {
      // the four disks tiling S(0, 1/sqrt|a|), S(0, sqrt|a|/4), S(0, 4/sqrt|a|)
      auto [c1, c2] = signed_pair(dyadic_pow2(-v / 2));
      f.members.push_back(scaling_disk(c1, v / 2 - 2, -v - 1));
      f.members.push_back(scaling_disk(c2, v / 2 - 2, -v - 1));
      f.members.push_back(scaling_disk(dyadic_pow2(v / 2 + 2), -v / 2 - 3, v + 4));
      f.members.push_back(scaling_disk(dyadic_pow2(-v / 2 - 2), v / 2 + 1, -v));
      return f;
    }
    default:
      throw FamilyError(std::string("no disk family for case ") + to_string(tag));
  }
}

PRegion member_image(const MapParam& m, const FamilyMember& member) {
  const PRegion& region = member.region;
  long long v = m.va();
  switch (member.rule) {
    case ImageRuleKind::ScalingDisk: {
      PRegion disk = region.canonical();
      long long gamma =
          member.gamma ? *member.gamma : expansion_exponent(m, disk, 24, 0x9e3779b9ULL);
      Dyadic center = apply_affine(m, disk.center());
      return PRegion::disk(center, disk.radius_log() + gamma);
    }
    case ImageRuleKind::InversionDisk: {
      // on D(0, 2^r) with |a| 2^2r < 1 the 1/x term dominates:
      // the image is everything of absolute value >= 2^-r, plus infinity
      long long r = region.radius_log();
      if (-v + 2 * r >= 0) throw FamilyError("inversion rule needs |a| < 2^-2r");
      return PRegion::outer_disk(-r - 1);
    }
    case ImageRuleKind::OuterRegion: {
      // |phi(x)| = |a||x| on {|x| > 2^R} once |a| 2^(2R+2) > 1
      long long R = region.radius_log();
      if (-v + 2 * R + 2 <= 0) throw FamilyError("outer rule needs |a| 2^(2R+2) > 1");
      return PRegion::outer_disk(R - v);
    }
    case ImageRuleKind::SphereMap: {
      long long i = region.radius_log();
      if (2 * i > v) return PRegion::sphere(Dyadic::zero(), i - v);
      if (2 * i < v) return PRegion::sphere(Dyadic::zero(), -i);
      throw FamilyError("sphere image on the boundary sphere depends on the unit of a");
    }
  }
  throw FamilyError("unknown image rule");
}

IncidenceMatrix incidence_from_family(const MapParam& m, const DiskFamily& f) {
  for (int i = 0; i < f.size(); ++i)
    for (int j = i + 1; j < f.size(); ++j)
      if (!region_disjoint(f.members[static_cast<std::size_t>(i)].region,
                           f.members[static_cast<std::size_t>(j)].region))
        throw FamilyError("family members overlap");
  // cross-check stamped scaling exponents against sampled pairs
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    const FamilyMember& mem = f.members[i];
    if (mem.rule == ImageRuleKind::ScalingDisk) {
      long long measured = expansion_exponent(m, mem.region, 16, 0x5eedULL + i);
      if (mem.gamma && *mem.gamma != measured)
        throw FamilyError("stamped scaling exponent disagrees with sampled pairs");
    }
  }
  IncidenceMatrix a;
  a.rows.assign(static_cast<std::size_t>(f.size()), std::vector<int>(static_cast<std::size_t>(f.size()), 0));
  for (int i = 0; i < f.size(); ++i) {
    PRegion img = member_image(m, f.members[static_cast<std::size_t>(i)]);
    for (int j = 0; j < f.size(); ++j)
      a.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          region_subset(f.members[static_cast<std::size_t>(j)].region, img) ? 1 : 0;
  }
  return a;
}

IncidenceMatrix incidence_matrix(const MapParam& m, int precision) {
  return incidence_from_family(m, julia_disks(m, precision));
}

std::optional<IncidenceMatrix> expected_matrix(CaseTag tag) {
  switch (tag) {
    case CaseTag::ExpandFullShift:
      return IncidenceMatrix{{{1, 1}, {1, 1}}};
    case CaseTag::ContractSqrtSmall:
      return IncidenceMatrix{{{0, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 1}}};
    case CaseTag::ContractSqrtQuarter:
      return IncidenceMatrix{
          {{0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 1}, {1, 1, 0, 0, 0}}};
    case CaseTag::ContractMinus3Quarter:
      return IncidenceMatrix{{{0, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}}};
    default:
      return std::nullopt;
  }
}

bool is_irreducible(const IncidenceMatrix& a) {
  int n = a.size();
  if (n == 0) return false;
  std::vector<std::vector<int>> reach = a.rows, power = a.rows;
  auto mul = [n](const std::vector<std::vector<int>>& x, const std::vector<std::vector<int>>& y) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
          for (int j = 0; j < n; ++j)
            if (y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
              out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
    return out;
  };
  for (int step = 1; step < n; ++step) {
    power = mul(power, a.rows);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] |=
            power[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  for (const auto& row : reach)
    for (int e : row)
      if (!e) return false;
  return true;
}

bool admissible(const IncidenceMatrix& a, const std::vector<int>& word) {
  for (int s : word)
    if (s < 1 || s > a.size()) return false;
  for (std::size_t k = 0; k + 1 < word.size(); ++k)
    if (!a.at(word[k] - 1, word[k + 1] - 1)) return false;
  return true;
}

Itinerary itinerary(const MapParam& m, const ProjPoint& x, int n, const DiskFamily& f) {
  Itinerary it;
  ProjPoint cur = x;
  for (int step = 0; step < n; ++step) {
    auto idx = f.locate(cur);
    if (!idx) break;
    it.symbols.push_back(*idx);
    if (step + 1 < n) {
      try {
        cur = apply(m, cur);
      } catch (const PrecisionError&) {
        break;
      }
    }
  }
  return it;
}

Itinerary itinerary(const MapParam& m, const ProjPoint& x, int n) {
  return itinerary(m, x, n, julia_disks(m));
}

ConjugacyReport verify_conjugacy(const MapParam& m, const std::vector<ProjPoint>& samples, int n,
                                 const DiskFamily& f) {
  ConjugacyReport report;
  report.samples = static_cast<int>(samples.size());
  bool all_scaling = std::all_of(f.members.begin(), f.members.end(), [](const FamilyMember& mem) {
    return mem.rule == ImageRuleKind::ScalingDisk;
  });
  std::vector<std::pair<std::vector<int>, ProjPoint>> survivors;
  for (const ProjPoint& x : samples) {
    Itinerary full = itinerary(m, x, n, f);
    if (full.certified_length() == n) {
      ++report.surviving;
      survivors.emplace_back(full.symbols, x);
    }
    if (full.certified_length() >= 1 && !x.is_infinity()) {
      Itinerary shifted = itinerary(m, apply(m, x), n - 1, f);
      int overlap = std::min(full.certified_length() - 1, shifted.certified_length());
      for (int k = 0; k < overlap; ++k)
        if (shifted.symbols[static_cast<std::size_t>(k)] !=
            full.symbols[static_cast<std::size_t>(k) + 1]) {
          ++report.shift_violations;
          break;
        }
      // a full itinerary of x certifies n-1 symbols of phi(x)
      if (full.certified_length() == n && shifted.certified_length() < n - 1)
        ++report.shift_violations;
    }
  }
  if (all_scaling) {
    report.separation_checked = true;
    for (std::size_t i = 0; i < survivors.size(); ++i)
      for (std::size_t j = i + 1; j < survivors.size(); ++j) {
        if (survivors[i].first != survivors[j].first) continue;
        const std::vector<int>& w = survivors[i].first;
        long long bound =
            f.members[static_cast<std::size_t>(w.back() - 1)].region.radius_log();
        for (std::size_t k = 0; k + 1 < w.size(); ++k)
          bound -= *f.members[static_cast<std::size_t>(w[k] - 1)].gamma;
        Abs2Bound diff = abs2_of_difference(survivors[i].second.value(), survivors[j].second.value());
        if (diff.exact && !(diff.value <= Abs2::pow2(bound))) ++report.separation_violations;
      }
  }
  return report;
}

WeakRepellerReport check_weak_repeller(const MapParam& m, const DiskFamily& f, int sample_pairs,
                                       std::uint64_t seed) {
  WeakRepellerReport report;
  report.matrix = incidence_from_family(m, f);  // also validates disjointness and exponents
  std::vector<PRegion> images;
  long long tau = 0;
  bool have_tau = false;
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    const FamilyMember& mem = f.members[i];
    if (mem.rule == ImageRuleKind::ScalingDisk) {
      report.exponents.push_back(expansion_exponent(m, mem.region, sample_pairs, seed + i));
      long long tau_i = -mem.region.canonical().radius_log();
      tau = have_tau ? std::max(tau, tau_i) : tau_i;
      have_tau = true;
    } else {
      report.exponents.push_back(std::nullopt);
    }
    images.push_back(member_image(m, mem));
  }
  report.tau = tau;
  for (const FamilyMember& mem : f.members) {
    if (mem.rule == ImageRuleKind::ScalingDisk)
      report.rescale_shift.push_back(tau - (-mem.region.canonical().radius_log()));
    else
      report.rescale_shift.push_back(std::nullopt);
  }
  report.condition_contains = true;
  for (int i = 0; i < f.size(); ++i) {
    bool contains_some = false, proper = false;
    for (int j = 0; j < f.size(); ++j) {
      const PRegion& dj = f.members[static_cast<std::size_t>(j)].region;
      if (region_subset(dj, images[static_cast<std::size_t>(i)])) {
        contains_some = true;
        if (!region_equal(dj, images[static_cast<std::size_t>(i)])) proper = true;
      }
    }
    if (!contains_some) {
      report.condition_contains = false;
      report.failed_members.push_back(i + 1);
    }
    if (proper) report.condition_proper = true;
  }
  report.transitive = is_irreducible(report.matrix);
  return report;
}

Dyadic preimage_in_disk(const MapParam& m, const Dyadic& target, const PRegion& disk,
                        int precision) {
  // roots of a x^2 - target x + 1 = 0
  Dyadic disc = target * target - Dyadic::from_int(4) * m.a();
  Dyadic two_a = Dyadic::from_int(2) * m.a();
  std::vector<Dyadic> roots;
  if (disc.is_zero()) {
    roots.push_back(target / two_a);
  } else {
    if (!sqrt_exists(disc)) throw DomainError("preimage_in_disk: no preimage in Q_2");
    Dyadic s = dyadic_sqrt(disc, precision);
    roots.push_back((target + s) / two_a);
    roots.push_back((target - s) / two_a);
  }
  for (const Dyadic& r : roots)
    if (disk.contains(r)) return r;
  throw FamilyError("preimage_in_disk: no root inside the disk");
}

}  // namespace dyadic
