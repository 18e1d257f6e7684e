#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphmass/commands.hpp"
#include "graphmass/config.hpp"
#include "graphmass/errors.hpp"
#include "graphmass/geometry.hpp"
#include "graphmass/identities.hpp"
#include "graphmass/mass.hpp"

namespace py = pybind11;
using namespace graphmass;

namespace {

std::vector<std::vector<double>> rows(const Matrix& a) {
  std::vector<std::vector<double>> out(a.rows(), std::vector<double>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out[i][j] = a(i, j);
  return out;
}

FunctionSpec function_from_json(const std::string& text, int n) {
  return parse_function_spec(nlohmann::json::parse(text), n, "function");
}

DomainSpec domain_from_json(const std::string& text, int n) {
  return parse_domain_spec(nlohmann::json::parse(text), n, "domain");
}

py::dict residual_dict(const IdentityResiduals& r) {
  py::dict d;
  d["gram"] = std::vector<double>(r.gram.begin(), r.gram.end());
  d["contraction"] = std::vector<double>(r.contraction.begin(), r.contraction.end());
  d["antisym_cf"] = r.antisym_cf;
  d["normal_commutator"] = r.normal_commutator;
  d["gauss_vs_intrinsic"] = r.gauss_vs_intrinsic;
  d["ricci_vs_formula"] = r.ricci_vs_formula;
  d["divergence"] = r.divergence;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "ADM mass of graphical asymptotically flat manifolds";
  m.attr("__version__") = kToolVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NotSpdError>(m, "NotSpdError", PyExc_ArithmeticError);

  py::class_<FunctionSpec>(m, "FunctionSpec")
      .def_static("from_json", &function_from_json, py::arg("text"), py::arg("n"))
      .def_readonly("n", &FunctionSpec::n)
      .def_property_readonly("m", &FunctionSpec::m);

  py::class_<DomainSpec>(m, "DomainSpec")
      .def_static("from_json", &domain_from_json, py::arg("text"), py::arg("n"))
      .def_static("whole_space", &DomainSpec::whole_space)
      .def_static("exterior_of_ball", &DomainSpec::exterior_of_ball, py::arg("radius"))
      .def("has_boundary", &DomainSpec::has_boundary)
      .def("contains", [](const DomainSpec& d, std::vector<double> x) { return d.contains(x); });

  py::class_<Jet2>(m, "Jet2")
      .def_readonly("n", &Jet2::n)
      .def_readonly("m", &Jet2::m)
      .def_property_readonly("value",
                             [](const Jet2& j) { return std::vector<double>(j.value.begin(), j.value.begin() + j.m); })
      .def_property_readonly("d1", [](const Jet2& j) { return rows(j.d1); })
      .def_property_readonly("d2", [](const Jet2& j) {
        std::vector<std::vector<std::vector<double>>> out(j.m, std::vector<std::vector<double>>(j.n, std::vector<double>(j.n)));
        for (int a = 0; a < j.m; ++a)
          for (int i = 0; i < j.n; ++i)
            for (int k = 0; k < j.n; ++k) out[a][i][k] = j.d2(a, i, k);
        return out;
      });

  m.def("eval_jet", [](const FunctionSpec& s, std::vector<double> x) { return eval_jet(s, x); },
        py::arg("spec"), py::arg("x"));
  m.def("fd_jet", [](const FunctionSpec& s, std::vector<double> x, double h) { return fd_jet(s, x, h); },
        py::arg("spec"), py::arg("x"), py::arg("h") = 0.0);

  m.def("induced_metric", [](const Jet2& j) {
    const Metric g = induced_metric(j);
    py::dict d;
    d["g"] = rows(g.g.matrix());
    d["g_inv"] = rows(g.g_inv.matrix());
    d["det"] = g.det;
    d["m_tensor"] = rows(g.m_tensor);
    return d;
  });
  m.def("normal_gram", [](const Jet2& j) {
    const NormalGram u = normal_gram(j);
    py::dict d;
    d["u"] = rows(u.u.matrix());
    d["u_inv"] = rows(u.u_inv.matrix());
    d["det"] = u.det;
    return d;
  });
  m.def("scalar_curvature", &scalar_curvature);
  m.def("scalar_curvature_intrinsic",
        [](const FunctionSpec& s, std::vector<double> x, double h) { return scalar_curvature_intrinsic(s, x, h); },
        py::arg("spec"), py::arg("x"), py::arg("h") = 1e-4);
  m.def("normal_scalar", &normal_scalar);
  m.def("normal_scalar_ricci", &normal_scalar_ricci);
  m.def("flux_field", &flux_field);
  m.def("divergence_residual",
        [](const FunctionSpec& s, std::vector<double> x, double h) { return divergence_residual(s, x, h); },
        py::arg("spec"), py::arg("x"), py::arg("h") = 1e-4);
  m.def("check_identities",
        [](const FunctionSpec& s, std::vector<double> x, double h) { return residual_dict(check_identities(s, x, h)); },
        py::arg("spec"), py::arg("x"), py::arg("h") = 1e-4);

  m.def("unit_sphere_volume", &unit_sphere_volume);
  m.def("sphere_rule", [](int n, int degree) {
    const SphereRule r = sphere_rule(n, degree);
    std::vector<std::vector<double>> nodes;
    for (std::size_t k = 0; k < r.size(); ++k) nodes.emplace_back(r.node(k).begin(), r.node(k).end());
    return py::make_tuple(nodes, r.weights);
  });

  m.def(
      "adm_mass_surface",
      [](const FunctionSpec& s, std::vector<double> radii, int degree) {
        const SurfaceMass sm = adm_mass_surface(s, radii, sphere_rule(s.n, degree));
        py::dict d;
        d["radii"] = sm.radii;
        d["estimates"] = sm.estimates;
        d["extrapolated"] = sm.fit.limit;
        d["exponent"] = sm.fit.exponent;
        d["fitted"] = sm.fit.fitted;
        return d;
      },
      py::arg("spec"), py::arg("radii"), py::arg("degree") = 8);
  m.def(
      "adm_mass_bulk",
      [](const FunctionSpec& s, const DomainSpec& d, int degree, int radial_nodes) {
        ExteriorOptions o;
        o.radial_nodes = radial_nodes;
        const BulkMass b = adm_mass_bulk(s, d, sphere_rule(s.n, degree), o);
        py::dict out;
        out["mass"] = b.mass;
        out["tail_bound"] = b.tail_bound;
        out["converged"] = b.converged;
        return out;
      },
      py::arg("spec"), py::arg("domain"), py::arg("degree") = 8, py::arg("radial_nodes") = 16);
  m.def(
      "boundary_term_weighted",
      [](const FunctionSpec& s, const DomainSpec& d, int degree) {
        return boundary_term_weighted(s, d, sphere_rule(s.n, degree)).value;
      },
      py::arg("spec"), py::arg("domain"), py::arg("degree") = 8);
  m.def(
      "boundary_term_full",
      [](const DomainSpec& d, int n, int degree) { return boundary_term_full(d, n, sphere_rule(n, degree)); },
      py::arg("domain"), py::arg("n"), py::arg("degree") = 8);
  m.def("penrose_bound", &penrose_bound, py::arg("area"), py::arg("n"));
  m.def(
      "superadditivity_check",
      [](std::vector<double> a, double beta) {
        const SuperadditivityCheck c = superadditivity_check(a, beta);
        return py::make_tuple(c.lhs, c.rhs, c.holds);
      },
      py::arg("a"), py::arg("beta"));

  m.def(
      "run",
      [](const std::string& command, const std::string& config_text) {
        const CommandOutput out = run_command(command, parse_config_text(config_text));
        return py::make_tuple(out.report.dump(), out.exit_code);
      },
      py::arg("command"), py::arg("config"));
}
