#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gradmap/convex.hpp"
#include "gradmap/flow.hpp"
#include "gradmap/kempf_ness.hpp"
#include "gradmap/projective.hpp"
#include "gradmap/scenario.hpp"
#include "gradmap/suites.hpp"

namespace py = pybind11;
using namespace gradmap;

namespace {

py::dict trajectory_to_dict(const Trajectory& tr) {
  py::dict out;
  out["times"] = tr.times;
  out["f_values"] = tr.f_values;
  out["grad_norms"] = tr.grad_norms;
  out["converged"] = tr.converged();
  out["terminal"] = CVector(tr.states.back());
  if (tr.limit) {
    out["limit"] = CVector(tr.limit->rep());
    out["limit_beta"] = CMatrix(tr.limit_beta);
  } else {
    out["limit"] = py::none();
    out["limit_beta"] = py::none();
  }
  return out;
}

RMatrix rows_to_matrix(const std::vector<RVector>& rows) {
  if (rows.empty()) return RMatrix(0, 0);
  RMatrix m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return m;
}

std::vector<RVector> matrix_to_rows(const RMatrix& m) {
  std::vector<RVector> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.emplace_back(m.row(i).transpose());
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gradient maps, norm-square flows and Kempf-Ness functions on complex projective space";

  py::register_exception<Error>(m, "GradmapError", PyExc_ValueError);

  py::class_<CompatibleGroup>(m, "CompatibleGroup")
      .def_static("full_complex", &CompatibleGroup::full_complex, py::arg("n"))
      .def_static("real_general_linear", &CompatibleGroup::real_general_linear, py::arg("n"))
      .def_static("real_special_linear", &CompatibleGroup::real_special_linear, py::arg("n"))
      .def_static("positive_diagonal_torus", &CompatibleGroup::positive_diagonal_torus, py::arg("n"))
      .def_static("custom", &CompatibleGroup::custom, py::arg("n"), py::arg("basis"), py::arg("label") = "custom")
      .def_property_readonly("n", &CompatibleGroup::n)
      .def_property_readonly("kind", [](const CompatibleGroup& g) { return std::string(to_string(g.kind())); })
      .def_property_readonly("dim_k", &CompatibleGroup::dim_k)
      .def_property_readonly("dim_p", &CompatibleGroup::dim_p)
      .def_property_readonly("k_basis", &CompatibleGroup::k_basis)
      .def_property_readonly("p_basis", &CompatibleGroup::p_basis)
      .def("__repr__", [](const CompatibleGroup& g) {
        return "<CompatibleGroup " + std::string(to_string(g.kind())) + " n=" + std::to_string(g.n()) + ">";
      });

  m.def("scenario_names", &scenario_names);
  m.def("suite_names", &suite_names);
  m.def("scenario_group", [](const std::string& name, int n) { return make_scenario(name, n).group; },
        py::arg("name"), py::arg("n") = 0);
  m.def(
      "run_suite_json",
      [](const std::string& scenario, const std::string& suite, std::uint64_t seed, double scale, int n) {
        const Scenario s = make_scenario(scenario, n);
        RunReport r = [&] {
          py::gil_scoped_release release;
          return run_suite(s, suite, seed, SuiteOptions{scale});
        }();
        return r.to_json().dump();
      },
      py::arg("scenario"), py::arg("suite"), py::arg("seed") = 7, py::arg("scale") = 1.0, py::arg("n") = 0);

  m.def("moment_map", [](const CVector& v) { return moment_map(ProjectivePoint(v)); }, py::arg("v"));
  m.def("gradient_map", [](const CompatibleGroup& g, const CVector& v) { return gradient_map(g, ProjectivePoint(v)); },
        py::arg("group"), py::arg("v"));
  m.def("norm_square", [](const CompatibleGroup& g, const CVector& v) { return norm_square(g, ProjectivePoint(v)); },
        py::arg("group"), py::arg("v"));
  m.def(
      "grad_norm_square",
      [](const CompatibleGroup& g, const CVector& v) { return grad_norm_square(g, ProjectivePoint(v)).vec(); },
      py::arg("group"), py::arg("v"));
  m.def(
      "integrate_flow",
      [](const CompatibleGroup& g, const CVector& v, double eps_grad, double t_max) {
        FlowOptions opts;
        opts.eps_grad = eps_grad;
        opts.t_max = t_max;
        Trajectory tr = [&] {
          py::gil_scoped_release release;
          return integrate_flow(g, ProjectivePoint(v), opts);
        }();
        return trajectory_to_dict(tr);
      },
      py::arg("group"), py::arg("v"), py::arg("eps_grad") = 1e-10, py::arg("t_max") = 1e4);

  m.def("kn_value", [](const CVector& v, const CMatrix& g) { return kn_value(ProjectivePoint(v), g); }, py::arg("v"),
        py::arg("g"));
  m.def(
      "symmetric_distance",
      [](const CMatrix& g, const CMatrix& h) { return distance(SymmetricSpacePoint(g), SymmetricSpacePoint(h)); },
      py::arg("g"), py::arg("h"));

  m.def("majorization_membership", &majorization_membership, py::arg("x"), py::arg("lam"), py::arg("tol") = 1e-9);
  m.def("permutohedron", [](const RVector& lam) { return rows_to_matrix(permutohedron(lam).vertices()); },
        py::arg("lam"));
  m.def(
      "convex_hull",
      [](const RMatrix& points) { return rows_to_matrix(convex_hull(matrix_to_rows(points)).polytope.vertices()); },
      py::arg("points"), "Extreme points of the rows of `points`.");
}
