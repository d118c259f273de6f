#pragma once

#include <json.hpp>

#include "dyadic/structure.hpp"

namespace dyadic {

// Insertion-ordered JSON keeps CLI output byte-stable and readable.
using Json = nlohmann::ordered_json;

Json to_json(const Abs2& a);
Json to_json(const PRegion& r);
Json to_json(const FixedPointReport& r);
Json to_json(const OrbitRecord& r);
Json to_json(const IncidenceMatrix& a);
Json to_json(const Itinerary& it);
Json to_json(const Verdict& v);
Json to_json(const DiskFamily& f);
Json to_json(const WeakRepellerReport& r);
Json to_json(const ConjugacyReport& r);
Json to_json(const RoutingReport& r);
Json to_json(const JuliaDescription& d);
Json to_json(const LevelDynamics& d);

}  // namespace dyadic
