// Python bindings. Operators are exchanged as (a, b) lists, polynomials as
// coefficient lists (constant term first), reports as dicts.

#include "spectral/continuum.hpp"
#include "spectral/inverse.hpp"
#include "spectral/jost.hpp"
#include "spectral/mfunction.hpp"
#include "spectral/orthopoly.hpp"
#include "spectral/sumrules.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace spectral;

namespace {

std::vector<double> coeffs(const RealPolynomial& p) { return {p.coefficients().begin(), p.coefficients().end()}; }

py::dict report_dict(const ConditionReport& r) {
  py::list entries;
  for (const auto& e : r.entries()) {
    py::dict d;
    d["label"] = e.label;
    d["value"] = e.value;
    d["trace"] = e.trace;
    d["verdict"] = std::string(to_string(e.verdict));
    d["note"] = e.note;
    entries.append(d);
  }
  py::dict out;
  out["title"] = r.title();
  out["entries"] = entries;
  out["all_hold"] = r.all_hold();
  return out;
}

py::dict measure_dict(const SpectralMeasure& m) {
  py::list points;
  for (const auto& p : m.points()) points.append(py::make_tuple(p.energy, p.weight));
  py::dict out;
  out["points"] = points;
  out["density"] = std::vector<double>(m.density().begin(), m.density().end());
  out["point_mass"] = m.point_mass();
  out["density_mass"] = m.density_mass();
  out["total_mass"] = m.total_mass();
  return out;
}

}  // namespace

PYBIND11_MODULE(jacobi_spectral, m) {
  m.doc() = "Spectral theory of finite-rank Jacobi perturbations and compactly supported Schrodinger potentials";

  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const NumericalError& e) {
      py::set_error(numerical, e.what());
    }
  });

  py::class_<PerturbedJacobi>(m, "Jacobi")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("a"), py::arg("b"))
      .def(py::init<>())
      .def_property_readonly("a", [](const PerturbedJacobi& J) {
        return std::vector<double>(J.a_values().begin(), J.a_values().end());
      })
      .def_property_readonly("b", [](const PerturbedJacobi& J) {
        return std::vector<double>(J.b_values().begin(), J.b_values().end());
      })
      .def_property_readonly("rank", &PerturbedJacobi::size)
      .def("max_deviation", &PerturbedJacobi::max_deviation)
      .def("__len__", &PerturbedJacobi::size)
      .def("__repr__", [](const PerturbedJacobi& J) { return "Jacobi(rank=" + std::to_string(J.size()) + ")"; });

  m.def("eval_M", &eval_M, py::arg("J"), py::arg("z"), "M(z) = -m(z + 1/z) for |z| < 1 or on the circle");
  m.def("eigenvalues", [](const PerturbedJacobi& J) {
    py::list out;
    for (const auto& e : eigenvalues_outside(J)) out.append(py::make_tuple(e.energy, e.z));
    return out;
  }, py::arg("J"), "(E, z) pairs for the eigenvalues outside [-2, 2]");
  m.def("spectral_measure", [](const PerturbedJacobi& J, std::size_t grid) { return measure_dict(ac_density(J, grid)); },
        py::arg("J"), py::arg("grid") = 2048);

  m.def("jost", [](const PerturbedJacobi& J) {
    const JostData d = jost_data(J);
    py::dict out;
    out["u"] = coeffs(d.u);
    out["L"] = coeffs(d.L);
    out["prod_a"] = d.prod_a;
    out["zeros_in_disk"] = d.zeros_in_disk;
    out["boundary_zeros"] = d.boundary_zeros;
    return out;
  }, py::arg("J"));
  m.def("perturbation_determinant", &perturbation_determinant, py::arg("J"), py::arg("z"));

  m.def("reconstruct_from_L", [](const std::vector<double>& L, std::size_t grid, double tolerance) {
    ReconstructOptions o;
    o.grid = grid;
    o.tolerance = tolerance;
    const Reconstruction r = reconstruct_from_L(RealPolynomial(L), o);
    return py::make_tuple(r.jacobi, r.scale, r.determinant_deviation);
  }, py::arg("L"), py::arg("grid") = 4096, py::arg("tolerance") = 1e-8,
        "(J, scale, determinant deviation) from perturbation determinant coefficients");
  m.def("roundtrip_check", &roundtrip_check, py::arg("J"), py::arg("grid") = 4096, py::arg("n_max") = 30);

  m.def("killip_simon_report", [](const PerturbedJacobi& J, std::size_t grid) {
    KillipSimonOptions o;
    o.grid = grid;
    return report_dict(killip_simon_report(J, o));
  }, py::arg("J"), py::arg("grid") = 2048);
  m.def("theorem_4_1_report", [](const PerturbedJacobi& J) { return report_dict(theorem_4_1_report(J)); },
        py::arg("J"));
  m.def("theorem_4_2_report", [](double c, double r) {
    return report_dict(theorem_4_2_report(SequenceRule::exponential(c, r)));
  }, py::arg("c"), py::arg("r"), "report for b_n = c r^n");
  m.def("hs_norm_sq", py::overload_cast<const PerturbedJacobi&>(&hs_norm_sq), py::arg("J"));

  py::class_<ContinuumPotential>(m, "Potential")
      .def(py::init<std::vector<double>, double>(), py::arg("samples"), py::arg("h"))
      .def_static("well", &ContinuumPotential::well, py::arg("depth"), py::arg("width"), py::arg("h"))
      .def_static("zero", &ContinuumPotential::zero, py::arg("X") = 1.0, py::arg("h") = 1e-2)
      .def_property_readonly("X", &ContinuumPotential::X)
      .def_property_readonly("h", &ContinuumPotential::h)
      .def("__call__", &ContinuumPotential::operator());

  m.def("weyl_M", [](const ContinuumPotential& V, double k) { return weyl_M(V, k); }, py::arg("V"), py::arg("k"));
  m.def("weyl_m", [](const ContinuumPotential& V, cplx z) { return weyl_m(V, z); }, py::arg("V"), py::arg("z"));
  m.def("bound_states", &bound_states, py::arg("V"), py::arg("tolerance") = 1e-12);
  m.def("theorem_2_1_report", [](const ContinuumPotential& V, double k_max, double dk, double q_max, double dp) {
    ContinuumOptions o;
    o.k_max = k_max;
    o.dk = dk;
    o.q_max = q_max;
    o.dp = dp;
    return report_dict(theorem_2_1_report(V, o));
  }, py::arg("V"), py::arg("k_max") = 40.0, py::arg("dk") = 0.02, py::arg("q_max") = 20.0, py::arg("dp") = 0.02);
}
