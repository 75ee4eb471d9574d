#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vlab/battery.hpp"
#include "vlab/random_fields.hpp"

namespace py = pybind11;
using namespace vlab;

namespace {

py::array_t<double> to_numpy(const RField& f) {
  py::array_t<double> out({f.grid.ny, f.grid.nx});
  auto r = out.mutable_unchecked<2>();
  for (int iy = 0; iy < f.grid.ny; ++iy) {
    for (int ix = 0; ix < f.grid.nx; ++ix) r(iy, ix) = f.at(ix, iy);
  }
  return out;
}

py::array_t<std::complex<double>> to_numpy(const CField& f) {
  py::array_t<std::complex<double>> out({f.grid.ny, f.grid.nx});
  auto r = out.mutable_unchecked<2>();
  for (int iy = 0; iy < f.grid.ny; ++iy) {
    for (int ix = 0; ix < f.grid.nx; ++ix) r(iy, ix) = f.at(ix, iy);
  }
  return out;
}

RunConfig make_config(double lx, double ly, int nx, int ny, int degree,
                      const std::vector<std::pair<double, double>>& positions,
                      std::uint64_t seed) {
  RunConfig c;
  c.lx = lx;
  c.ly = ly;
  c.nx = nx;
  c.ny = ny;
  c.degree = degree;
  c.positions = positions;
  c.seed = seed;
  return c;
}

}  // namespace

PYBIND11_MODULE(_vlab, m) {
  m.doc() = "abelian vortex solutions on a flat torus and the Kahler geometry of their moduli";

  py::register_exception<BradlowBoundError>(m, "BradlowBoundError");
  py::register_exception<SolverConvergenceError>(m, "SolverConvergenceError");

  py::class_<TangentVector>(m, "TangentVector")
      .def_property_readonly("alpha10", [](const TangentVector& X) { return to_numpy(X.alpha.c10); })
      .def_property_readonly("beta", [](const TangentVector& X) { return to_numpy(X.beta); })
      .def_readonly("gauge_projected", &TangentVector::gauge_projected)
      .def_readonly("projection_defect", &TangentVector::projection_defect);

  py::class_<VortexSolution>(m, "VortexSolution")
      .def_readonly("residual1", &VortexSolution::residual1)
      .def_readonly("residual2", &VortexSolution::residual2)
      .def_readonly("newton_iterations", &VortexSolution::newton_iterations)
      .def_property_readonly("positions",
                             [](const VortexSolution& s) {
                               std::vector<std::pair<double, double>> out;
                               for (cplx z : s.positions) out.emplace_back(z.real(), z.imag());
                               return out;
                             })
      .def_property_readonly("area", [](const VortexSolution& s) { return s.bundle.surf.area(); })
      .def_property_readonly("density", [](const VortexSolution& s) { return to_numpy(s.density()); })
      .def_property_readonly("profile_v", [](const VortexSolution& s) { return to_numpy(s.v); })
      .def("bradlow_integral", &VortexSolution::bradlow_integral)
      .def("integral_identity_defect", &VortexSolution::integral_identity_defect)
      .def("gauge_vector_field",
           [](const VortexSolution& s, const py::array_t<std::complex<double>>& zeta) {
             auto r = zeta.unchecked<2>();
             CField z(s.bundle.grid());
             for (int iy = 0; iy < z.grid.ny; ++iy) {
               for (int ix = 0; ix < z.grid.nx; ++ix) z.at(ix, iy) = r(iy, ix);
             }
             return gauge_vector_field(s, z);
           })
      .def("position_tangent",
           [](const VortexSolution& s, int k, int dir, double eps) {
             return gauge_project(s, tangent_from_positions(s, k, dir, eps));
           },
           py::arg("vortex_index") = 0, py::arg("dir") = 0, py::arg("eps") = 5e-4)
      .def("random_tangent",
           [](const VortexSolution& s, std::uint64_t seed) {
             Rng rng(seed);
             return random_tangent(s.bundle, rng, 6);
           })
      .def("project", [](const VortexSolution& s, const TangentVector& X) {
        return gauge_project(s, X);
      })
      .def("apply_complex_structure",
           [](const VortexSolution&, const TangentVector& X) {
             return apply_complex_structure(X);
           })
      .def("metric_g", [](const VortexSolution& s, const TangentVector& X,
                          const TangentVector& Y) { return metric_g(s.bundle, X, Y); })
      .def("omega", [](const VortexSolution& s, const TangentVector& X, const TangentVector& Y) {
        return omega(s.bundle, X, Y);
      })
      .def("omega_psi0_solved",
           [](const VortexSolution& s, const TangentVector& X, const TangentVector& Y) {
             FixedSection psi0 = FixedSection::from_solution(s);
             return omega_psi0(s.bundle, psi0, X, Y);
           })
      .def("prequantum_defect",
           [](const VortexSolution& s, const TangentVector& X, const TangentVector& Y) {
             FixedSection psi0 = FixedSection::from_solution(s);
             return verify_prequantum_identity(s.bundle, psi0, X, Y).defect;
           });

  m.def("solve",
        [](double lx, double ly, int nx, int ny, int degree,
           const std::vector<std::pair<double, double>>& positions) {
          RunConfig c = make_config(lx, ly, nx, ny, degree, positions, 12345);
          return solve_from_config(c);
        },
        py::arg("lx"), py::arg("ly"), py::arg("nx"), py::arg("ny"), py::arg("degree"),
        py::arg("positions"));

  m.def("verify",
        [](double lx, double ly, int nx, int ny, int degree,
           const std::vector<std::pair<double, double>>& positions, std::uint64_t seed,
           int count) {
          RunConfig c = make_config(lx, ly, nx, ny, degree, positions, seed);
          c.battery_count = count;
          BatteryResult res = run_verify_battery(c);
          py::list out;
          for (const auto& r : res.reports) {
            py::dict d;
            d["name"] = r.name;
            d["defect"] = r.defect;
            d["tolerance"] = r.tolerance;
            d["pass"] = r.pass;
            d["note"] = r.context;
            out.append(d);
          }
          return out;
        },
        py::arg("lx"), py::arg("ly"), py::arg("nx"), py::arg("ny"), py::arg("degree"),
        py::arg("positions"), py::arg("seed") = 12345, py::arg("count") = 8);
}
