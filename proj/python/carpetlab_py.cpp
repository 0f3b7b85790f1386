#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "carpetlab/boundary.hpp"
#include "carpetlab/constructions.hpp"
#include "carpetlab/gluing.hpp"
#include "carpetlab/mesh_io.hpp"
#include "carpetlab/metric.hpp"
#include "carpetlab/predicates.hpp"
#include "carpetlab/sampling.hpp"
#include "carpetlab/verify.hpp"

namespace py = pybind11;
using namespace carpetlab;

namespace {

py::dict report_dict(const ConstantReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["value"] = r.value_str() == "fail" || r.value_str() == "inf" ? py::object(py::str(r.value_str())) : py::object(py::float_(r.value));
  d["capped"] = r.capped;
  d["samples"] = r.samples;
  d["skipped"] = r.skipped;
  d["seed"] = r.seed;
  d["r_min"] = r.r_min;
  d["r_max"] = r.r_max;
  d["paper_ref"] = r.paper_ref;
  d["extra"] = r.extra;
  d["series"] = r.series;
  return d;
}

SampleSpec make_spec(int samples, std::uint64_t seed, std::optional<double> r_min, std::optional<double> r_max,
                     bool relative) {
  SampleSpec s;
  s.samples = samples;
  s.seed = seed;
  s.relative = relative;
  if (r_min) s.r_min = *r_min;
  if (r_max) s.r_max = *r_max;
  return s;
}

}  // namespace

PYBIND11_MODULE(carpetlab, m) {
  m.doc() = "Discrete metric-geometry checks for slit domains, slit carpets and gluings";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<DiscreteSpace>(m, "DiscreteSpace")
      .def("__len__", &DiscreteSpace::size)
      .def_property_readonly("h", &DiscreteSpace::h)
      .def_property_readonly("label", &DiscreteSpace::label)
      .def_property_readonly("edge_count", [](const DiscreteSpace& s) { return s.edges().size(); })
      .def("marked_names", [](const DiscreteSpace& s) {
        std::vector<std::string> names;
        for (const auto& [k, v] : s.marked()) names.push_back(k);
        return names;
      })
      .def("marked_ids", [](const DiscreteSpace& s, const std::string& name) { return s.marked(name).ids; })
      .def("position", [](const DiscreteSpace& s, VertexId v) {
        const Point p = s.vertex(v).pos;
        return py::make_tuple(p.x, p.y);
      })
      .def("to_json", [](const DiscreteSpace& s) { return space_to_json(s).dump(); });

  py::class_<SlitDomainMesh>(m, "SlitDomainMesh")
      .def_readonly("space", &SlitDomainMesh::space)
      .def_readonly("family", &SlitDomainMesh::family)
      .def_readonly("generation", &SlitDomainMesh::generation)
      .def_readonly("h", &SlitDomainMesh::h)
      .def_property_readonly("slit_count", [](const SlitDomainMesh& mesh) { return mesh.slits.size(); })
      .def("to_json", [](const SlitDomainMesh& mesh) { return mesh_to_json(mesh).dump(); });

  m.def("gen_Q", &gen_Q, py::arg("n"), py::arg("h"));
  m.def("gen_Q_inf", &gen_Q_inf, py::arg("N"), py::arg("h"));
  m.def("gen_slit_carpet", &gen_slit_carpet, py::arg("n"), py::arg("h"));
  m.def("gen_round_circle", [](int n, bool path) {
    return gen_round_circle(n, path ? MetricKind::path : MetricKind::euclidean);
  }, py::arg("m"), py::arg("path") = false);
  m.def("mesh_from_json", [](const std::string& text) { return mesh_from_json(nlohmann::json::parse(text)); });

  m.def("shortest_dist", &shortest_dist, py::arg("space"), py::arg("u"), py::arg("v"));
  m.def("diameter", [](const DiscreteSpace& s) { return diameter(s); });

  auto constant = [&](const char* name, ConstantReport (*fn)(const DiscreteSpace&, const SampleSpec&)) {
    m.def(name, [fn](const DiscreteSpace& s, int samples, std::uint64_t seed, std::optional<double> r_min,
                     std::optional<double> r_max, bool relative) {
      py::gil_scoped_release release;
      ConstantReport r = fn(s, make_spec(samples, seed, r_min, r_max, relative));
      py::gil_scoped_acquire acquire;
      return report_dict(r);
    }, py::arg("space"), py::arg("samples") = 50, py::arg("seed") = 1, py::arg("r_min") = py::none(),
          py::arg("r_max") = py::none(), py::arg("relative") = true);
  };
  constant("llc1_constant", &llc1_constant);
  constant("llc2_constant", &llc2_constant);
  constant("allc_constant", &allc_constant);
  m.def("ahlfors_fit", [](const DiscreteSpace& s, double Q, int samples, std::uint64_t seed, double r_min,
                          double r_max) {
    return report_dict(ahlfors_fit(s, Q, make_spec(samples, seed, r_min, r_max, false)));
  }, py::arg("space"), py::arg("Q") = 2.0, py::arg("samples") = 64, py::arg("seed") = 1, py::arg("r_min"),
        py::arg("r_max"));
  m.def("quasicircle_constant", [](const DiscreteSpace& s, const std::string& set) {
    return report_dict(quasicircle_constant(s, s.marked(set)));
  }, py::arg("space"), py::arg("set"));

  m.def("boundary_component_count", [](const DiscreteSpace& s) { return boundary_components(s).size(); });
  m.def("end_count", [](const DiscreteSpace& s) {
    EndProfile p = ends(s, deepest_vertex(s));
    return p.stabilized ? py::object(py::int_(p.end_count)) : py::object(py::none());
  });
  m.def("rank", [](const SlitDomainMesh& mesh) { return rank(component_space(mesh)); });

  m.def("two_squares_comparison", []() {
    ComparisonReport r = comparison_check(glue(two_squares_instance()));
    py::dict d;
    d["pass"] = r.pass;
    d["pairs"] = r.pairs;
    d["min_ratio"] = r.min_ratio;
    d["max_ratio"] = r.max_ratio;
    return d;
  });

  m.def("verify", [](const std::string& manifest, std::uint64_t seed, int threads) {
    set_default_threads(threads);
    VerifyResult res = verify(nlohmann::json::parse(manifest), seed);
    return py::make_tuple(rows_to_csv(res.rows), res.exit_status);
  }, py::arg("manifest"), py::arg("seed") = 0, py::arg("threads") = 0,
        "Runs a manifest given as JSON text; returns (csv, exit_status).");
}
