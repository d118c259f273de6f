#include "dyadic/json_io.hpp"

namespace dyadic {

Json to_json(const Abs2& a) {
  if (a.is_zero()) return {{"zero", true}};
  return {{"log2", a.log2()}};
}

Json to_json(const PRegion& r) {
  switch (r.kind()) {
    case PRegion::Kind::Disk:
      return {{"kind", "disk"}, {"center", r.center().str()}, {"radiusLog", r.radius_log()}};
    case PRegion::Kind::Sphere:
      return {{"kind", "sphere"}, {"center", r.center().str()}, {"radiusLog", r.radius_log()}};
    case PRegion::Kind::OuterDisk:
      return {{"kind", "outer"}, {"radiusLog", r.radius_log()}};
  }
  return {};
}

Json to_json(const FixedPointReport& r) {
  Json points = Json::array();
  for (const FixedPoint& p : r.points) {
    points.push_back({{"location", p.location.str()},
                      {"multiplier", p.multiplier.str()},
                      {"multiplierAbs", p.multiplier.abs2().str()},
                      {"type", to_string(p.type)}});
  }
  return {{"points", points}};
}

Json to_json(const OrbitRecord& r) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const OrbitStep& s = r.steps[i];
    Json step{{"step", i}, {"point", s.point.str()}};
    if (s.valuation)
      step["valuation"] = *s.valuation;
    else
      step["valuation"] = s.point.is_infinity() ? "-inf" : "inf";
    step["rhoToInf"] = s.rho_to_infinity.str();
    steps.push_back(std::move(step));
  }
  Json events = Json::array();
  for (const OrbitEvent& e : r.events) {
    Json ev{{"kind", to_string(e.kind)}, {"step", e.step}};
    if (e.kind == OrbitEventKind::CycleDetected) ev["period"] = e.period;
    events.push_back(std::move(ev));
  }
  return {{"steps", steps}, {"events", events}};
}

Json to_json(const IncidenceMatrix& a) {
  return {{"size", a.size()}, {"rows", a.rows}, {"irreducible", is_irreducible(a)}};
}

Json to_json(const Itinerary& it) {
  return {{"symbols", it.symbols}, {"certifiedLength", it.certified_length()}};
}

Json to_json(const Verdict& v) {
  Json out{{"status", to_string(v.status)}, {"certificate", to_string(v.certificate)}};
  if (v.certificate == CertificateKind::EnteredXa ||
      v.certificate == CertificateKind::EscapeCertified)
    out["step"] = v.step;
  if (v.certificate == CertificateKind::CycleInRepeller) out["period"] = v.period;
  return out;
}

Json to_json(const DiskFamily& f) {
  Json members = Json::array();
  for (const FamilyMember& mem : f.members) {
    Json entry{{"region", to_json(mem.region)}};
    if (mem.gamma) entry["gamma"] = *mem.gamma;
    members.push_back(std::move(entry));
  }
  return {{"case", to_string(f.tag)}, {"members", members}};
}

Json to_json(const WeakRepellerReport& r) {
  Json exps = Json::array();
  for (const auto& g : r.exponents) exps.push_back(g ? Json(*g) : Json());
  Json shifts = Json::array();
  for (const auto& s : r.rescale_shift) shifts.push_back(s ? Json(*s) : Json());
  return {{"exponents", exps},
          {"conditionContains", r.condition_contains},
          {"conditionProper", r.condition_proper},
          {"failedMembers", r.failed_members},
          {"matrix", to_json(r.matrix)},
          {"transitive", r.transitive},
          {"tau", r.tau},
          {"rescaleShift", shifts}};
}

Json to_json(const ConjugacyReport& r) {
  return {{"samples", r.samples},
          {"surviving", r.surviving},
          {"shiftViolations", r.shift_violations},
          {"separationViolations", r.separation_violations},
          {"separationChecked", r.separation_checked},
          {"ok", r.ok()}};
}

Json to_json(const RoutingReport& r) {
  Json violations = Json::array();
  for (const RoutingViolation& v : r.violations)
    violations.push_back({{"start", v.start}, {"sphereLog", v.sphere_log}, {"step", v.step}});
  return {{"checked", r.checked}, {"violations", violations}, {"ok", r.ok()}};
}

Json to_json(const JuliaDescription& d) {
  Json out{{"case", to_string(d.tag)}, {"payload", to_string(d.payload)}};
  if (d.family) out["family"] = to_json(*d.family);
  if (d.matrix) {
    out["matrix"] = to_json(*d.matrix);
    out["matrixMatchesReference"] = d.matrix_matches_reference;
  }
  if (!d.routing_rule.empty()) out["routingRule"] = d.routing_rule;
  return out;
}

Json to_json(const LevelDynamics& d) {
  Json cycles = Json::array();
  for (std::size_t c = 0; c < d.cycles.size(); ++c) {
    Json names = Json::array();
    for (int s : d.cycles[c]) names.push_back(d.state_name(s));
    cycles.push_back({{"length", d.cycles[c].size()},
                      {"states", names},
                      {"tailDepth", d.tail_depth[c]}});
  }
  Json successors = Json::array();
  for (int s = 0; s < d.state_count(); ++s)
    successors.push_back({{"state", d.state_name(s)},
                          {"next", d.state_name(d.successor[static_cast<std::size_t>(s)])}});
  return {{"level", d.level},
          {"stateCount", d.state_count()},
          {"cycles", cycles},
          {"successors", successors}};
}

}  // namespace dyadic
