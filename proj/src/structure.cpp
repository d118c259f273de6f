#include "dyadic/structure.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>

namespace dyadic {

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Julia: return "Julia";
    case VerdictStatus::Fatou: return "Fatou";
    case VerdictStatus::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(CertificateKind c) {
  switch (c) {
    case CertificateKind::ValuationParity: return "ValuationParity";
    case CertificateKind::TwoPointSet: return "TwoPointSet";
    case CertificateKind::EnteredXa: return "EnteredXa";
    case CertificateKind::EscapeCertified: return "EscapeCertified";
    case CertificateKind::CycleInRepeller: return "CycleInRepeller";
    case CertificateKind::WholeSpaceFatou: return "WholeSpaceFatou";
    case CertificateKind::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

const char* to_string(JuliaPayloadKind k) {
  switch (k) {
    case JuliaPayloadKind::EmptyJulia: return "EmptyJulia";
    case JuliaPayloadKind::AllToInfinity: return "AllToInfinity";
    case JuliaPayloadKind::CantorFullShift: return "CantorFullShift";
    case JuliaPayloadKind::SubshiftKFX: return "SubshiftKFX";
    case JuliaPayloadKind::OddSpheres: return "OddSpheres";
    case JuliaPayloadKind::TwoPoints: return "TwoPoints";
  }
  return "?";
}

namespace {

bool is_zero_or_infinity(const ProjPoint& x) {
  return x.is_infinity() || x.value().is_zero();
}

Verdict iterate_for_verdict(const MapParam& m, const ProjPoint& x, int budget, bool expanding) {
  OrbitRecord rec = orbit(m, x, {.max_steps = budget,
                                 .exact_bit_cap = std::size_t{1} << 14,
                                 .stop_at_decisive = true});
  if (expanding) {
    if (auto esc = rec.first_event(OrbitEventKind::EscapeCertified))
      return {VerdictStatus::Fatou, CertificateKind::EscapeCertified, esc->step};
  } else if (auto xa = rec.first_event(OrbitEventKind::EnteredXa)) {
    return {VerdictStatus::Fatou, CertificateKind::EnteredXa, xa->step};
  }
  if (auto cyc = rec.first_event(OrbitEventKind::CycleDetected))
    return {VerdictStatus::Julia, CertificateKind::CycleInRepeller, cyc->step, cyc->period};
  return {VerdictStatus::Unknown, CertificateKind::BudgetExhausted};
}

}  // namespace

Verdict julia_verdict(const MapParam& m, const ProjPoint& x, int budget) {
  if (budget < 1) throw DomainError("julia_verdict: budget must be positive");
  switch (classify(m)) {
    case CaseTag::GoodReduction:
    case CaseTag::ExpandNoSqrt:
      return {VerdictStatus::Fatou, CertificateKind::WholeSpaceFatou};
    case CaseTag::ExpandFullShift:
      return iterate_for_verdict(m, x, budget, true);
    case CaseTag::ContractSqrtSmall:
    case CaseTag::ContractSqrtQuarter:
      return iterate_for_verdict(m, x, budget, false);
    case CaseTag::ContractMinus3Quarter: {
      if (is_zero_or_infinity(x)) return {VerdictStatus::Julia, CertificateKind::TwoPointSet};
      long long v = x.value().valuation();
      if ((v % 2 + 2) % 2 == 1) return {VerdictStatus::Julia, CertificateKind::ValuationParity};
      OrbitRecord rec = orbit(m, x, {.max_steps = budget,
                                     .exact_bit_cap = std::size_t{1} << 14,
                                     .stop_at_decisive = true});
      if (auto xa = rec.first_event(OrbitEventKind::EnteredXa))
        return {VerdictStatus::Fatou, CertificateKind::EnteredXa, xa->step};
      return {VerdictStatus::Unknown, CertificateKind::BudgetExhausted};
    }
    case CaseTag::ContractOther:
      if (is_zero_or_infinity(x)) return {VerdictStatus::Julia, CertificateKind::TwoPointSet};
      return {VerdictStatus::Fatou, CertificateKind::WholeSpaceFatou};
  }
  return {VerdictStatus::Unknown, CertificateKind::BudgetExhausted};
}

JuliaDescription julia_description(const MapParam& m, int precision) {
  CaseTag tag = classify(m);
  JuliaDescription desc{tag, JuliaPayloadKind::EmptyJulia, {}, {}, true, ""};
  switch (tag) {
    case CaseTag::GoodReduction:
      desc.payload = JuliaPayloadKind::EmptyJulia;
      return desc;
    case CaseTag::ExpandNoSqrt:
      desc.payload = JuliaPayloadKind::AllToInfinity;
      return desc;
    case CaseTag::ExpandFullShift:
      desc.payload = JuliaPayloadKind::CantorFullShift;
      break;
    case CaseTag::ContractSqrtSmall:
    case CaseTag::ContractSqrtQuarter:
      desc.payload = JuliaPayloadKind::SubshiftKFX;
      break;
    case CaseTag::ContractMinus3Quarter:
      desc.payload = JuliaPayloadKind::OddSpheres;
      desc.routing_rule =
          "phi^(k-1)(x) in S(0,2^3) if x in S(0,2^(2k+1)); "
          "phi^k(x) in S(0,2^3) if x in S(0,2^-(2k+1)) (k >= 1)";
      break;
    case CaseTag::ContractOther:
      desc.payload = JuliaPayloadKind::TwoPoints;
      return desc;
  }
  desc.family = julia_disks(m, precision);
  desc.matrix = incidence_from_family(m, *desc.family);
  if (auto ref = expected_matrix(tag)) desc.matrix_matches_reference = (*desc.matrix == *ref);
  return desc;
}

namespace {

// Truncated sample on S(0, 2^sphere_log): iteration in truncated mode keeps
// every valuation exact while the rational representation stays bounded.
Dyadic sphere_sample(std::mt19937_64& rng, long long sphere_log, int precision = 96) {
  BigInt u = 2 * BigInt(static_cast<unsigned long long>(rng() >> 20)) + 1;
  return (Dyadic::from_bigint(u) * dyadic_pow2(-sphere_log)).to_approx(precision);
}

}  // namespace

RoutingReport verify_routing(const MapParam& m, int k_max, int samples_per_sphere,
                             std::uint64_t seed) {
  CaseTag tag = classify(m);
  RoutingReport report;
  std::mt19937_64 rng(seed);
  if (tag == CaseTag::ContractMinus3Quarter) {
    for (int k = 1; k <= k_max; ++k) {
      for (int s = 0; s < samples_per_sphere; ++s) {
        for (bool small_side : {false, true}) {
          long long sphere = small_side ? -(2 * k + 1) : 2 * k + 1;
          Dyadic x = sphere_sample(rng, sphere);
          int steps = small_side ? k : k - 1;
          Dyadic cur = x;
          for (int t = 0; t < steps; ++t) cur = apply_affine(m, cur);
          ++report.checked;
          if (cur.valuation() != -3)
            report.violations.push_back({x.str(), sphere, steps});
        }
      }
    }
    return report;
  }
  if (tag != CaseTag::ContractOther)
    throw DomainError("verify_routing: contracting non-square cases only");
  long long v = m.va();
  long long band = (v % 2 == 1) ? (v - 1) / 2 : v / 2 - 1;
  for (long long sphere = -k_max; sphere <= k_max; ++sphere) {
    for (int s = 0; s < samples_per_sphere; ++s) {
      Dyadic x = sphere_sample(rng, sphere);
      // steps to shrink |x| into the band, plus boundary routing slack
      int bound = static_cast<int>(std::abs(sphere) / v + 8);
      Dyadic cur = x;
      int landed = -1;
      for (int t = 0; t <= bound; ++t) {
        long long vi = -cur.valuation();
        if (std::abs(vi) <= band) {
          landed = t;
          break;
        }
        cur = apply_affine(m, cur);
      }
      ++report.checked;
      if (landed < 0) {
        report.violations.push_back({x.str(), sphere, bound});
        continue;
      }
      // once inside, the orbit must stay on the sphere pair S(0,2^i) u S(0,2^-i)
      long long i = std::abs(-cur.valuation());
      for (int t = 0; t < 6; ++t) {
        cur = apply_affine(m, cur);
        if (std::abs(-cur.valuation()) != i) {
          report.violations.push_back({x.str(), sphere, landed + t + 1});
          break;
        }
      }
    }
  }
  return report;
}

std::string LevelDynamics::state_name(int id) const {
  int half = state_count() / 3 * 2;  // 2^level
  if (id < half) return "[" + std::to_string(id) + ":1]";
  return "[1:" + std::to_string(2 * (id - half)) + "]";
}

int LevelDynamics::project(int id) const {
  int half = state_count() / 3 * 2;          // 2^level
  int coarse_half = half / 2;                // 2^(level-1)
  if (id < half) return id % coarse_half;
  int y = 2 * (id - half);
  return coarse_half + (y % coarse_half) / 2;
}

LevelDynamics finite_level_dynamics(const MapParam& m, int level) {
  if (classify(m) != CaseTag::GoodReduction)
    throw DomainError("finite_level_dynamics: needs |a| = 1");
  if (level < 1 || level > 16) throw DomainError("finite_level_dynamics: level out of range");
  unsigned n = static_cast<unsigned>(level);
  long long mod = 1LL << n;
  long long a = static_cast<long long>(m.a().unit_mod(level));
  long long half = mod;                  // number of [x:1] states
  long long total = mod + mod / 2;       // plus [1:y] with y even
  LevelDynamics dyn;
  dyn.level = level;
  dyn.successor.resize(static_cast<std::size_t>(total));

  auto inv_mod = [&](long long u) {
    long long x = 1;
    for (int bits = 1; bits < level; bits *= 2) x = (x * (2 - u * x)) % mod;
    return ((x % mod) + mod) % mod;
  };
  auto encode = [&](long long u, long long w) {
    // normalize [u : w], not both even
    if (w % 2 == 1) return (u * inv_mod(w)) % mod;
    return half + (w * inv_mod(u)) % mod / 2;
  };
  for (long long id = 0; id < total; ++id) {
    long long x, y;
    if (id < half) {
      x = id;
      y = 1;
    } else {
      x = 1;
      y = 2 * (id - half);
    }
    long long u = (a * x % mod * x + y * y) % mod;
    long long w = x * y % mod;
    dyn.successor[static_cast<std::size_t>(id)] = static_cast<int>(encode(u, w));
  }

  // cycle inventory of the functional graph
  int nstates = static_cast<int>(total);
  dyn.cycle_of_state.assign(static_cast<std::size_t>(nstates), -1);
  std::vector<int> color(static_cast<std::size_t>(nstates), 0);  // 0 new, 1 in progress, 2 done
  for (int s = 0; s < nstates; ++s) {
    if (color[static_cast<std::size_t>(s)] != 0) continue;
    std::vector<int> path;
    int cur = s;
    while (color[static_cast<std::size_t>(cur)] == 0) {
      color[static_cast<std::size_t>(cur)] = 1;
      path.push_back(cur);
      cur = dyn.successor[static_cast<std::size_t>(cur)];
    }
    if (color[static_cast<std::size_t>(cur)] == 1) {
      // found a new cycle starting at `cur`
      std::vector<int> cycle;
      auto it = std::find(path.begin(), path.end(), cur);
      for (auto p = it; p != path.end(); ++p) cycle.push_back(*p);
      int cid = static_cast<int>(dyn.cycles.size());
      for (int node : cycle) dyn.cycle_of_state[static_cast<std::size_t>(node)] = cid;
      dyn.cycles.push_back(std::move(cycle));
    }
    for (int node : path) color[static_cast<std::size_t>(node)] = 2;
  }

  // longest tail feeding each cycle: reverse BFS from the cycle nodes
  std::vector<std::vector<int>> reverse_adj(static_cast<std::size_t>(nstates));
  for (int s = 0; s < nstates; ++s)
    reverse_adj[static_cast<std::size_t>(dyn.successor[static_cast<std::size_t>(s)])].push_back(s);
  dyn.tail_depth.assign(dyn.cycles.size(), 0);
  for (std::size_t cid = 0; cid < dyn.cycles.size(); ++cid) {
    std::deque<std::pair<int, int>> queue;
    for (int node : dyn.cycles[cid]) queue.emplace_back(node, 0);
    int deepest = 0;
    while (!queue.empty()) {
      auto [node, depth] = queue.front();
      queue.pop_front();
      deepest = std::max(deepest, depth);
      for (int prev : reverse_adj[static_cast<std::size_t>(node)])
        if (dyn.cycle_of_state[static_cast<std::size_t>(prev)] < 0)
          queue.emplace_back(prev, depth + 1);
    }
    dyn.tail_depth[cid] = deepest;
  }
  return dyn;
}

bool projection_commutes(const LevelDynamics& fine, const LevelDynamics& coarse) {
  if (fine.level != coarse.level + 1) throw DomainError("projection needs adjacent levels");
  for (int id = 0; id < fine.state_count(); ++id) {
    int down_then_step = coarse.successor[static_cast<std::size_t>(fine.project(id))];
    int step_then_down = fine.project(fine.successor[static_cast<std::size_t>(id)]);
    if (down_then_step != step_then_down) return false;
  }
  return true;
}

bool cycles_cover(const LevelDynamics& fine, const LevelDynamics& coarse) {
  for (const std::vector<int>& cycle : fine.cycles) {
    // the projected set must be exactly one coarse cycle
    int cid = coarse.cycle_of_state[static_cast<std::size_t>(fine.project(cycle.front()))];
    if (cid < 0) return false;
    std::vector<int> image;
    for (int node : cycle) {
      int down = fine.project(node);
      if (coarse.cycle_of_state[static_cast<std::size_t>(down)] != cid) return false;
      image.push_back(down);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<int> target = coarse.cycles[static_cast<std::size_t>(cid)];
    std::sort(target.begin(), target.end());
    if (image != target) return false;
  }
  return true;
}

}  // namespace dyadic
