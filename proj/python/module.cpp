// Python bindings for the radial and parameter layers: enough surface to
// validate parameters, compute limit-problem ground states, and run decay
// and cutoff diagnostics from scripts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "choquard/multibump.hpp"
#include "choquard/params.hpp"
#include "choquard/radial.hpp"

namespace py = pybind11;
using namespace choquard;

PYBIND11_MODULE(_choquard, m) {
  m.doc() = "equivariant magnetic Choquard toolkit (radial/parameter layer)";

  py::class_<Interval>(m, "Interval")
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def_readonly("lo_closed", &Interval::lo_closed)
      .def_readonly("hi_closed", &Interval::hi_closed)
      .def("__repr__", &Interval::str);

  py::class_<SymmetrySpec>(m, "SymmetrySpec")
      .def(py::init([](int k, int m_, std::array<int, 2> plane) {
             return SymmetrySpec{k, m_, plane};
           }),
           py::arg("k") = 1, py::arg("m") = 0,
           py::arg("plane") = std::array<int, 2>{0, 1})
      .def_readwrite("k", &SymmetrySpec::k)
      .def_readwrite("m", &SymmetrySpec::m)
      .def_readwrite("plane", &SymmetrySpec::plane);

  py::class_<ProblemParams>(m, "ProblemParams")
      .def(py::init<>())
      .def_readwrite("dim", &ProblemParams::dim)
      .def_readwrite("alpha", &ProblemParams::alpha)
      .def_readwrite("p", &ProblemParams::p)
      .def_readwrite("v_inf", &ProblemParams::v_inf)
      .def_readwrite("kappa", &ProblemParams::kappa)
      .def_readwrite("c0", &ProblemParams::c0)
      .def_readwrite("rho", &ProblemParams::rho)
      .def_readwrite("eps_cutoff", &ProblemParams::eps_cutoff)
      .def_readwrite("claim_h1", &ProblemParams::claim_h1)
      .def_readwrite("claim_h2", &ProblemParams::claim_h2)
      .def_readwrite("nonrigorous", &ProblemParams::nonrigorous);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("admissible", &ValidationReport::admissible)
      .def_readonly("nonrigorous", &ValidationReport::nonrigorous)
      .def_readonly("violations", &ValidationReport::violations);

  py::class_<ExponentSet>(m, "ExponentSet")
      .def_readonly("lambda_set", &ExponentSet::lambda_set)
      .def_readonly("empty", &ExponentSet::empty);

  m.def("validate", &validate, py::arg("params"));
  m.def("lambda_set", &lambda_set, py::arg("params"));
  m.def("delta_tau", &delta_tau, py::arg("spec"));

  py::class_<RadialMesh>(m, "RadialMesh")
      .def(py::init([](double r_max, int m_nodes) {
             return RadialMesh{r_max, m_nodes};
           }),
           py::arg("r_max") = 30.0, py::arg("m_nodes") = 1200)
      .def_readwrite("r_max", &RadialMesh::r_max)
      .def_readwrite("m_nodes", &RadialMesh::m_nodes)
      .def("r", &RadialMesh::r);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("mesh", &RadialProfile::mesh)
      .def_readonly("values", &RadialProfile::values)
      .def_readonly("lambda_", &RadialProfile::lambda)
      .def_readonly("energy", &RadialProfile::energy)
      .def_readonly("norm_sq", &RadialProfile::norm_sq)
      .def_readonly("d_value", &RadialProfile::d_value)
      .def_readonly("nehari_residual", &RadialProfile::nehari_residual)
      .def_readonly("grad_residual", &RadialProfile::grad_residual)
      .def_readonly("iterations", &RadialProfile::iterations)
      .def_readonly("converged", &RadialProfile::converged);

  py::class_<DecayFit>(m, "DecayFit")
      .def_readonly("rate", &DecayFit::rate)
      .def_readonly("power", &DecayFit::power)
      .def_readonly("offset", &DecayFit::offset)
      .def_readonly("residual", &DecayFit::residual);

  py::class_<RadialSolveConfig>(m, "RadialSolveConfig")
      .def(py::init<>())
      .def_readwrite("max_iter", &RadialSolveConfig::max_iter)
      .def_readwrite("tol_grad", &RadialSolveConfig::tol_grad)
      .def_readwrite("tol_nehari", &RadialSolveConfig::tol_nehari);

  m.def("solve_ground_state", &solve_ground_state, py::arg("lambda_"),
        py::arg("params"), py::arg("mesh"),
        py::arg("config") = RadialSolveConfig{});
  m.def("decay_fit", &decay_fit, py::arg("profile"), py::arg("r_lo"),
        py::arg("r_hi"));

  m.def("chi_cutoff", &chi_cutoff, py::arg("t"), py::arg("eps"));
  m.def("cutoff_radius", &cutoff_radius, py::arg("kappa"), py::arg("delta"),
        py::arg("mu"), py::arg("y_norm"));
  m.def("choose_mu", &choose_mu, py::arg("v_inf"), py::arg("kappa"),
        py::arg("delta"));
  m.def("eps_window_max", &eps_window_max, py::arg("kappa"), py::arg("delta"),
        py::arg("mu"));
}
