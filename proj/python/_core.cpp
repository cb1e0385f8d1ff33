#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pluriharm/acceptance.hpp"
#include "pluriharm/conformal.hpp"
#include "pluriharm/cross.hpp"
#include "pluriharm/disc_potential.hpp"
#include "pluriharm/errors.hpp"
#include "pluriharm/extension.hpp"
#include "pluriharm/grid_extremal.hpp"
#include "pluriharm/io.hpp"

namespace py = pybind11;
using namespace pluriharm;

namespace {

// Grid factor described by the same JSON the command-line tool reads.
PlanarFactor factor_from_text(const std::string& text) { return factor_from_json(load_json(text, "factor"), "factor"); }

py::dict extension_dict(const ExtensionResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["N_used"] = r.N_used;
  d["cauchy_gap"] = r.cauchy_gap;
  d["omega_total"] = r.omega_total;
  d["gaps"] = r.gaps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relative extremal functions, crosses and the Gonchar-Carleman extension";
  m.attr("__version__") = std::string(version());

  auto base = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<TopologyError>(m, "TopologyError", domain.ptr());
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  (void)base;

  py::class_<UnitCircleSet>(m, "ArcSet")
      .def(py::init([](const std::vector<std::pair<double, double>>& arcs) {
             return UnitCircleSet::from_intervals(arcs);
           }),
           py::arg("arcs") = std::vector<std::pair<double, double>>{})
      .def_static("full", &UnitCircleSet::full_circle)
      .def_static("arc", &UnitCircleSet::arc, py::arg("start"), py::arg("length"))
      .def_property_readonly("measure", &UnitCircleSet::measure)
      .def("complement", &UnitCircleSet::complement)
      .def("rotated", &UnitCircleSet::rotated)
      .def("density_points", &UnitCircleSet::density_points)
      .def("contains", py::overload_cast<double>(&UnitCircleSet::contains, py::const_), py::arg("theta"))
      .def("intervals", &UnitCircleSet::intervals)
      .def("__eq__", [](const UnitCircleSet& a, const UnitCircleSet& b) { return a == b; })
      .def("__repr__", [](const UnitCircleSet& s) { return "ArcSet(" + arcset_to_json(s)["arcs"].dump() + ")"; });

  m.def("omega_disc", &omega_disc, py::arg("z"), py::arg("B"), "omega(z, B, E) in closed form");
  m.def("omega_conjugate_disc", &omega_conjugate_disc, py::arg("z"), py::arg("B"));
  m.def("g_boundary", &g_boundary, py::arg("a"), py::arg("B"));

  m.def(
      "omega_grid",
      [](const std::string& domain_json, const std::string& target_json, double h) {
        const GridDomain dom = grid_domain_from_json(load_json(domain_json, "domain"),
                                                     target_json.empty() ? Json::object() : load_json(target_json, "target"), h);
        const ScalarField f = solve_extremal(dom);
        std::vector<std::tuple<double, double, double>> rows;
        rows.reserve(dom.interior_count());
        for (std::size_t node : dom.interior_nodes()) {
          const Complex z = dom.lattice().point(node);
          rows.emplace_back(z.real(), z.imag(), f.at(node));
        }
        return rows;
      },
      py::arg("domain"), py::arg("target") = "", py::arg("h"),
      "Grid solve; returns (x, y, omega) for every interior node.");

  py::class_<Cross2>(m, "Cross")
      .def(py::init([](const std::string& first, const std::string& second) {
             return Cross2(factor_from_text(first), factor_from_text(second));
           }),
           py::arg("first"), py::arg("second"))
      .def("omega", &Cross2::omega_total, py::arg("z"), py::arg("w"))
      .def("contains", [](const Cross2& c, Complex z, Complex w) { return envelope_contains(c, z, w); })
      .def("part", [](const Cross2& c, Complex z, Complex w) { return std::string(cross_part_name(cross_part(c, z, w))); });

  m.def("two_constant_bound", &two_constant_bound, py::arg("omega"), py::arg("m"), py::arg("M"));

  m.def(
      "carleman_limit",
      [](const std::string& function, const UnitCircleSet& A, const UnitCircleSet& B, Complex z, Complex w,
         double tolerance) {
        CarlemanOptions opt;
        opt.tolerance = tolerance;
        py::gil_scoped_release release;
        const ExtensionResult r = carleman_limit(sampler_for(parse_test_function(function)), A, B, z, w, opt);
        py::gil_scoped_acquire acquire;
        return extension_dict(r);
      },
      py::arg("function"), py::arg("A"), py::arg("B"), py::arg("z"), py::arg("w"), py::arg("tolerance") = 1e-6,
      "Extension of a named test function from the bidisc cross with legs A, B.");

  m.def("hartogs_extend", &hartogs_extend, py::arg("F"), py::arg("r"), py::arg("z1"), py::arg("z2"),
        py::arg("nodes") = 4096);

  m.def(
      "riemann_map_boundary",
      [](const std::string& domain_json, double h, Complex center, int vertices) {
        const GridDomain dom = grid_domain_from_json(load_json(domain_json, "domain"), Json::object(), h);
        const DiscreteConformalMap map = riemann_map(dom, center, {vertices});
        return std::make_pair(map.boundary(), map.boundary_correspondence());
      },
      py::arg("domain"), py::arg("h"), py::arg("center"), py::arg("vertices") = 2048,
      "Boundary vertices of a grid region and their images on the unit circle.");

  m.def(
      "run_criteria",
      [](const std::vector<int>& ids) {
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_criteria(ids);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["title"] = r.title;
          d["pass"] = r.pass;
          d["seconds"] = r.seconds;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("ids"));
}
