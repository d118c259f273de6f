#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dyadic/json_io.hpp"

namespace py = pybind11;
using namespace dyadic;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    default: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
  }
}

Dyadic parse(const std::string& lit, int prec) { return Dyadic::parse(lit, prec); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact 2-adic dynamics of a*x + 1/x on the projective line over Q_2";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);

  m.def("valuation", [](const std::string& x) { return parse(x, 64).valuation(); },
        py::arg("x"));
  m.def("abs2", [](const std::string& x) { return parse(x, 64).abs2().str(); }, py::arg("x"));
  m.def("sqrt_exists", [](const std::string& x) { return sqrt_exists(parse(x, 64)); },
        py::arg("x"));
  m.def("sqrt", [](const std::string& x, int prec) { return dyadic_sqrt(parse(x, prec + 1), prec).str(); },
        py::arg("x"), py::arg("prec") = 64);
  m.def("square_class", [](const std::string& x) { return std::string(to_string(square_class(parse(x, 64)))); },
        py::arg("x"));
  m.def("same_extension", [](const std::string& x, const std::string& y) {
          return same_extension(parse(x, 64), parse(y, 64));
        },
        py::arg("x"), py::arg("y"));

  m.def("spherical_distance", [](const std::string& x, const std::string& y) {
          return spherical_distance(ProjPoint::parse(x), ProjPoint::parse(y)).str();
        },
        py::arg("x"), py::arg("y"));

  m.def("classify", [](const std::string& a) {
          return std::string(to_string(classify(MapParam::parse(a))));
        },
        py::arg("a"));
  m.def("apply", [](const std::string& a, const std::string& x) {
          return apply(MapParam::parse(a), ProjPoint::parse(x)).str();
        },
        py::arg("a"), py::arg("x"));
  m.def("fixed_points", [](const std::string& a, int prec) {
          return json_to_py(to_json(fixed_points(MapParam::parse(a, prec), prec)));
        },
        py::arg("a"), py::arg("prec") = 64);
  m.def("orbit", [](const std::string& a, const std::string& x, int steps, bool truncated, int prec) {
          OrbitOptions oo{.max_steps = steps, .truncated = truncated, .precision = prec};
          return json_to_py(to_json(orbit(MapParam::parse(a, prec), ProjPoint::parse(x, prec), oo)));
        },
        py::arg("a"), py::arg("x"), py::arg("steps") = 20, py::arg("truncated") = false,
        py::arg("prec") = 64);
  m.def("julia_verdict", [](const std::string& a, const std::string& x, int budget) {
          return json_to_py(to_json(julia_verdict(MapParam::parse(a), ProjPoint::parse(x), budget)));
        },
        py::arg("a"), py::arg("x"), py::arg("budget") = 200);
  m.def("julia_description", [](const std::string& a, int prec) {
          return json_to_py(to_json(julia_description(MapParam::parse(a, prec), prec)));
        },
        py::arg("a"), py::arg("prec") = 64);
  m.def("incidence_matrix", [](const std::string& a, int prec) {
          return json_to_py(to_json(incidence_matrix(MapParam::parse(a, prec), prec)));
        },
        py::arg("a"), py::arg("prec") = 64);
  m.def("itinerary", [](const std::string& a, const std::string& x, int n) {
          MapParam m = MapParam::parse(a);
          return json_to_py(to_json(itinerary(m, ProjPoint::parse(x), n)));
        },
        py::arg("a"), py::arg("x"), py::arg("n") = 10);
  m.def("weak_repeller", [](const std::string& a, int prec) {
          MapParam m = MapParam::parse(a, prec);
          return json_to_py(to_json(check_weak_repeller(m, julia_disks(m, prec))));
        },
        py::arg("a"), py::arg("prec") = 64);
  m.def("verify_routing", [](const std::string& a, int kmax, int samples, std::uint64_t seed) {
          return json_to_py(to_json(verify_routing(MapParam::parse(a), kmax, samples, seed)));
        },
        py::arg("a"), py::arg("kmax") = 3, py::arg("samples") = 10, py::arg("seed") = 1);
  m.def("finite_levels", [](const std::string& a, int level) {
          return json_to_py(to_json(finite_level_dynamics(MapParam::parse(a), level)));
        },
        py::arg("a"), py::arg("level") = 4);
}
