#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "dyadic/json_io.hpp"

using namespace dyadic;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitConsistency = 4;

struct Options {
  std::string a_literal;
  std::string x_literal = "1";
  int steps = 20;
  int budget = 200;
  int precision = kDefaultPrecision;
  int level = 4;
  int kmax = 3;
  int samples = 20;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string mode = "exact";
};

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

uint64_t rng_below(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

ProjPoint disk_point(std::mt19937_64& rng, const PRegion& region, int precision) {
  PRegion disk = region.canonical();
  BigInt t = BigInt(static_cast<unsigned long long>(rng() >> 32));
  Dyadic x = disk.center() + Dyadic::from_bigint(t) * dyadic_pow2(-disk.radius_log());
  if (!x.is_exact()) x = x.to_approx(precision);
  return ProjPoint::finite(x);
}

int run_classify(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  CaseTag tag = classify(m);
  FixedPointReport fixed = fixed_points(m, opt.precision);
  if (opt.format == "json") {
    Json j{{"a", m.a().str()}, {"case", to_string(tag)}};
    j["fixedPoints"] = to_json(fixed)["points"];
    emit(j);
    return 0;
  }
  if (opt.format != "text") throw ParseError("classify supports text or json output");
  std::cout << to_string(tag) << "\n";
  for (const FixedPoint& p : fixed.points)
    std::cout << "fixed point " << p.location.str() << ": multiplier " << p.multiplier.str()
              << " (|.|_2 = " << p.multiplier.abs2().str() << "), " << to_string(p.type) << "\n";
  return 0;
}

int run_orbit(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  ProjPoint x = ProjPoint::parse(opt.x_literal, opt.precision);
  OrbitOptions oo{.max_steps = opt.steps,
                  .truncated = opt.mode == "truncated",
                  .precision = opt.precision};
  OrbitRecord rec = orbit(m, x, oo);
  if (opt.format == "json") {
    emit(to_json(rec));
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << "step,point,valuation,rho_to_inf\n";
    for (std::size_t i = 0; i < rec.steps.size(); ++i) {
      const OrbitStep& s = rec.steps[i];
      std::cout << i << "," << s.point.str() << ","
                << (s.valuation ? std::to_string(*s.valuation)
                                : (s.point.is_infinity() ? "-inf" : "inf"))
                << "," << s.rho_to_infinity.str() << "\n";
    }
    return 0;
  }
  if (opt.format != "text") throw ParseError("unknown format");
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    const OrbitStep& s = rec.steps[i];
    std::cout << "step " << i << ": " << s.point.str()
              << "  rho(x,inf) = " << s.rho_to_infinity.str() << "\n";
  }
  for (const OrbitEvent& e : rec.events) {
    std::cout << "event " << to_string(e.kind) << " at step " << e.step;
    if (e.kind == OrbitEventKind::CycleDetected) std::cout << " (period " << e.period << ")";
    std::cout << "\n";
  }
  return 0;
}

int run_julia(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  ProjPoint x = ProjPoint::parse(opt.x_literal, opt.precision);
  Verdict v = julia_verdict(m, x, opt.budget);
  if (opt.format == "json") {
    emit(to_json(v));
    return 0;
  }
  if (opt.format != "text") throw ParseError("julia supports text or json output");
  std::cout << to_string(v.status) << " (" << to_string(v.certificate);
  if (v.certificate == CertificateKind::EnteredXa ||
      v.certificate == CertificateKind::EscapeCertified)
    std::cout << " at step " << v.step;
  if (v.certificate == CertificateKind::CycleInRepeller) std::cout << ", period " << v.period;
  std::cout << ")\n";
  return 0;
}

int run_itinerary(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  ProjPoint x = ProjPoint::parse(opt.x_literal, opt.precision);
  Itinerary it = itinerary(m, x, opt.steps, julia_disks(m, opt.precision));
  if (opt.format == "json") {
    emit(to_json(it));
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << "step,symbol\n";
    for (std::size_t i = 0; i < it.symbols.size(); ++i)
      std::cout << i << "," << it.symbols[i] << "\n";
    return 0;
  }
  if (opt.format != "text") throw ParseError("unknown format");
  std::cout << "symbols:";
  for (int s : it.symbols) std::cout << " " << s;
  std::cout << "\ncertified length: " << it.certified_length() << "\n";
  return 0;
}

int run_matrix(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  IncidenceMatrix a = incidence_matrix(m, opt.precision);
  int status = 0;
  if (auto ref = expected_matrix(classify(m)); ref && !(a == *ref)) {
    std::cerr << "consistency violation: computed matrix disagrees with the reference for "
              << to_string(classify(m)) << "\n";
    status = kExitConsistency;
  }
  if (opt.format == "json") {
    emit(to_json(a));
    return status;
  }
  if (opt.format == "csv") {
    for (const auto& row : a.rows) {
      for (std::size_t j = 0; j < row.size(); ++j)
        std::cout << row[j] << (j + 1 < row.size() ? "," : "");
      std::cout << "\n";
    }
    return status;
  }
  if (opt.format != "text") throw ParseError("unknown format");
  for (const auto& row : a.rows) {
    for (std::size_t j = 0; j < row.size(); ++j)
      std::cout << row[j] << (j + 1 < row.size() ? " " : "");
    std::cout << "\n";
  }
  std::cout << "irreducible: " << (is_irreducible(a) ? "true" : "false") << "\n";
  return status;
}

int run_routing(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  RoutingReport rep = verify_routing(m, opt.kmax, opt.samples, opt.seed);
  if (opt.format == "json") {
    emit(to_json(rep));
  } else if (opt.format == "text") {
    std::cout << "checked: " << rep.checked << "\nviolations: " << rep.violations.size() << "\n";
    for (const RoutingViolation& v : rep.violations)
      std::cout << "  start " << v.start << " on S(0,2^" << v.sphere_log << ") failed at step "
                << v.step << "\n";
  } else {
    throw ParseError("routing supports text or json output");
  }
  return rep.ok() ? 0 : kExitConsistency;
}

int run_levels(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  LevelDynamics dyn = finite_level_dynamics(m, opt.level);
  if (opt.format == "json") {
    emit(to_json(dyn));
    return 0;
  }
  if (opt.format == "csv") {
    std::cout << "state,next\n";
    for (int s = 0; s < dyn.state_count(); ++s)
      std::cout << dyn.state_name(s) << ","
                << dyn.state_name(dyn.successor[static_cast<std::size_t>(s)]) << "\n";
    return 0;
  }
  if (opt.format != "text") throw ParseError("unknown format");
  std::cout << "level " << dyn.level << ": " << dyn.state_count() << " states, "
            << dyn.cycles.size() << " cycle(s)\n";
  for (std::size_t c = 0; c < dyn.cycles.size(); ++c) {
    std::cout << "cycle of length " << dyn.cycles[c].size() << " (max tail " << dyn.tail_depth[c]
              << "):";
    for (int s : dyn.cycles[c]) std::cout << " " << dyn.state_name(s);
    std::cout << "\n";
  }
  return 0;
}

int run_report(const Options& opt) {
  MapParam m = MapParam::parse(opt.a_literal, opt.precision);
  CaseTag tag = classify(m);
  JuliaDescription desc = julia_description(m, opt.precision);
  FixedPointReport fixed = fixed_points(m, opt.precision);
  Json j{{"a", m.a().str()}, {"case", to_string(tag)}};
  j["fixedPoints"] = to_json(fixed)["points"];
  j["description"] = to_json(desc);
  bool consistent = desc.matrix_matches_reference;
  std::mt19937_64 rng(opt.seed);

  if (desc.family) {
    WeakRepellerReport wr = check_weak_repeller(m, *desc.family, 32, opt.seed);
    j["weakRepeller"] = to_json(wr);
    consistent = consistent && wr.ok() && wr.transitive;
    std::vector<ProjPoint> samples;
    for (int i = 0; i < opt.samples; ++i) {
      const FamilyMember& mem =
          desc.family->members[rng_below(rng, desc.family->members.size())];
      if (mem.rule == ImageRuleKind::ScalingDisk)
        samples.push_back(disk_point(rng, mem.region, opt.precision));
    }
    ConjugacyReport conj = verify_conjugacy(m, samples, 6, *desc.family);
    j["conjugacy"] = to_json(conj);
    consistent = consistent && conj.ok();
  }
  if (tag == CaseTag::ContractMinus3Quarter || tag == CaseTag::ContractOther) {
    RoutingReport routing = verify_routing(m, opt.kmax, opt.samples, opt.seed);
    j["routing"] = to_json(routing);
    consistent = consistent && routing.ok();
  }
  if (tag == CaseTag::GoodReduction) {
    LevelDynamics fine = finite_level_dynamics(m, opt.level);
    LevelDynamics coarse = finite_level_dynamics(m, std::max(1, opt.level - 1));
    Json lv = to_json(fine);
    lv.erase("successors");
    if (opt.level > 1) {
      lv["projectionCommutes"] = projection_commutes(fine, coarse);
      lv["cyclesCover"] = cycles_cover(fine, coarse);
      consistent = consistent && projection_commutes(fine, coarse) && cycles_cover(fine, coarse);
    }
    j["levels"] = lv;
  }
  j["consistent"] = consistent;

  if (opt.format == "json") {
    emit(j);
  } else if (opt.format == "text") {
    std::cout << "parameter a = " << m.a().str() << "\ncase: " << to_string(tag) << "\n";
    for (const FixedPoint& p : fixed.points)
      std::cout << "fixed point " << p.location.str() << ": multiplier " << p.multiplier.str()
                << ", " << to_string(p.type) << "\n";
    std::cout << "julia set: " << to_string(desc.payload) << "\n";
    if (desc.matrix) {
      std::cout << "incidence matrix (" << desc.matrix->size() << "x" << desc.matrix->size()
                << "), matches reference: " << (desc.matrix_matches_reference ? "yes" : "NO")
                << "\n";
      for (const auto& row : desc.matrix->rows) {
        std::cout << " ";
        for (int e : row) std::cout << " " << e;
        std::cout << "\n";
      }
    }
    if (!desc.routing_rule.empty()) std::cout << "routing: " << desc.routing_rule << "\n";
    if (j.contains("conjugacy"))
      std::cout << "conjugacy spot check: "
                << (j["conjugacy"]["ok"].get<bool>() ? "pass" : "FAIL") << "\n";
    if (j.contains("routing"))
      std::cout << "sphere routing: " << (j["routing"]["ok"].get<bool>() ? "pass" : "FAIL")
                << "\n";
    if (j.contains("levels"))
      std::cout << "finite levels: " << j["levels"]["stateCount"].get<int>() << " states at level "
                << opt.level << "\n";
    std::cout << "consistent: " << (consistent ? "yes" : "NO") << "\n";
  } else {
    throw ParseError("report supports text or json output");
  }
  return consistent ? 0 : kExitConsistency;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact 2-adic dynamics of phi_a(x) = a*x + 1/x on the projective line"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("DYADIC_DYN_PREC")) opt.precision = std::atoi(env);

  auto add_common = [&](CLI::App* sub, bool needs_x) {
    sub->add_option("--a", opt.a_literal, "map parameter (rational or 2^v:bits literal)")
        ->required();
    if (needs_x) sub->add_option("--x", opt.x_literal, "starting point ('inf' allowed)");
    sub->add_option("--prec", opt.precision, "working precision in digits");
    sub->add_option("--seed", opt.seed, "seed for sampled checks");
    sub->add_option("--format", opt.format, "output format: text|json|csv");
  };

  CLI::App* classify_cmd = app.add_subcommand("classify", "parameter case and fixed points");
  add_common(classify_cmd, false);

  CLI::App* orbit_cmd = app.add_subcommand("orbit", "iterate the map and report events");
  add_common(orbit_cmd, true);
  orbit_cmd->add_option("--steps", opt.steps, "number of steps");
  orbit_cmd->add_option("--mode", opt.mode, "exact|truncated");

  CLI::App* julia_cmd = app.add_subcommand("julia", "Julia/Fatou membership verdict");
  add_common(julia_cmd, true);
  julia_cmd->add_option("--budget", opt.budget, "iteration budget");

  CLI::App* itinerary_cmd = app.add_subcommand("itinerary", "symbol sequence through the disk family");
  add_common(itinerary_cmd, true);
  itinerary_cmd->add_option("--steps", opt.steps, "number of symbols");

  CLI::App* matrix_cmd = app.add_subcommand("matrix", "incidence matrix of the disk family");
  add_common(matrix_cmd, false);

  CLI::App* routing_cmd = app.add_subcommand("routing", "sphere routing verification");
  add_common(routing_cmd, false);
  routing_cmd->add_option("--kmax", opt.kmax, "largest sphere index");
  routing_cmd->add_option("--samples", opt.samples, "samples per sphere");

  CLI::App* levels_cmd = app.add_subcommand("levels", "finite-level dynamics mod 2^n");
  add_common(levels_cmd, false);
  levels_cmd->add_option("--level", opt.level, "level n (1..16)");

  CLI::App* report_cmd = app.add_subcommand("report", "full per-case battery");
  add_common(report_cmd, false);
  report_cmd->add_option("--kmax", opt.kmax, "largest sphere index for routing");
  report_cmd->add_option("--samples", opt.samples, "sample count");
  report_cmd->add_option("--level", opt.level, "finite level for good reduction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(classify_cmd)) return run_classify(opt);
    if (app.got_subcommand(orbit_cmd)) return run_orbit(opt);
    if (app.got_subcommand(julia_cmd)) return run_julia(opt);
    if (app.got_subcommand(itinerary_cmd)) return run_itinerary(opt);
    if (app.got_subcommand(matrix_cmd)) return run_matrix(opt);
    if (app.got_subcommand(routing_cmd)) return run_routing(opt);
    if (app.got_subcommand(levels_cmd)) return run_levels(opt);
    if (app.got_subcommand(report_cmd)) return run_report(opt);
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const ScalingError& e) {
    std::cerr << "consistency violation: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
