#include "vlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace vlab {

namespace {

constexpr double kPi = std::numbers::pi;

/// Defect of the reduced scalar equation, divided by 4: this equals the
/// max-norm defect of F(A) - (1 - |Psi|^2_H) omega for the assembled pair.
RField scalar_defect(const Spectral& sp, const RField& h_sq, const RField& W, double ref_curv,
                     const RField& v) {
  RField lap = sp.laplacian(v);
  RField out(v.grid);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = 0.25 * lap[i] - h_sq[i] * (W[i] * std::exp(v[i]) - 1.0) - ref_curv;
  }
  return out;
}

struct NewtonResult {
  RField v;
  double defect = 0;
  int iterations = 0;
  bool converged = false;
};

NewtonResult newton_solve(const Surface& s, const RField& W, double ref_curv, RField v0,
                          const SolveOptions& opts) {
  const Spectral& sp = s.spectral();
  const RField& h_sq = s.h_sq();
  NewtonResult res;
  res.v = std::move(v0);
  RField defect = scalar_defect(sp, h_sq, W, ref_curv, res.v);
  res.defect = max_abs(defect);

  for (int it = 0; it < opts.max_iter; ++it) {
    if (res.defect <= opts.tol) {
      res.converged = true;
      break;
    }
    // Linearization: (lap/4 - h^2 W e^v) dv = -defect
    RField q(res.v.grid), rhs(res.v.grid);
    for (std::size_t i = 0; i < q.size(); ++i) {
      q[i] = 4.0 * h_sq[i] * W[i] * std::exp(res.v[i]);
      rhs[i] = 4.0 * defect[i];
    }
    RField dv = solve_spd_schroedinger(sp, q, rhs, opts.pcg_tol, opts.pcg_max_iter);

    double lambda = 1.0;
    bool improved = false;
    RField best_v = res.v;
    double best_defect = res.defect;
    RField best_field = defect;
    while (lambda >= 1.0 / 64) {
      RField trial(res.v.grid);
      for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = res.v[i] + lambda * dv[i];
      RField trial_defect = scalar_defect(sp, h_sq, W, ref_curv, trial);
      double norm = max_abs(trial_defect);
      if (norm < best_defect) {
        best_v = std::move(trial);
        best_defect = norm;
        best_field = std::move(trial_defect);
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    res.iterations = it + 1;
    if (!improved) break;  // stalled at the roundoff floor
    res.v = std::move(best_v);
    res.defect = best_defect;
    defect = std::move(best_field);
  }
  if (res.defect <= opts.tol) res.converged = true;
  return res;
}

RField initial_guess(const RField& W) {
  double mean = 0;
  for (double w : W.v) mean += w;
  mean /= static_cast<double>(W.size());
  double c = std::max(0.5 * mean, 1e-8);
  RField v0(W.grid);
  for (std::size_t i = 0; i < v0.size(); ++i) v0[i] = -std::log(W[i] + c);
  return v0;
}

}  // namespace

RField VortexSolution::density() const {
  RField out(v.grid);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::exp(v[i]) * bundle.pair_weight[i];
  return out;
}

double VortexSolution::bradlow_integral() const {
  RField d = density();
  double sum = 0;
  for (std::size_t i = 0; i < d.size(); ++i) sum += d[i] * bundle.surf.h_sq()[i];
  return sum * v.grid.dx() * v.grid.dy();
}

double VortexSolution::integral_identity_defect() const {
  double lhs = bundle.surf.area() - bradlow_integral();
  double rhs = kPi * bundle.ref.degree();
  return rhs > 0 ? std::abs(lhs - rhs) / rhs : std::abs(lhs);
}

std::pair<double, double> vortex_residuals(const Bundle& b, const Connection& A,
                                           const Section& psi) {
  TwoForm F = curvature(b, A);
  RField dens = section_density(b, psi);
  double r1 = 0;
  for (std::size_t i = 0; i < F.c.size(); ++i) {
    cplx defect = F.c[i] - (1.0 - dens[i]) * b.surf.h_sq()[i];
    r1 = std::max(r1, std::abs(defect));
  }
  CField db = dbar(b, A, psi);
  double r2sq = 0;
  for (std::size_t i = 0; i < db.size(); ++i) r2sq += std::norm(db[i]) * b.pair_weight[i];
  r2sq *= b.grid().dx() * b.grid().dy();
  return {r1, std::sqrt(r2sq)};
}

VortexSolution solve_vortices(const Surface& s, const HermitianMetric& H, int degree,
                              std::vector<cplx> positions, const SolveOptions& opts) {
  require_same_grid(s.grid(), H.H.grid, "solve_vortices");
  if (degree < 0) throw std::invalid_argument("solve_vortices: degree must be >= 0");
  if (static_cast<int>(positions.size()) != degree) {
    throw std::invalid_argument("solve_vortices: need one vortex position per unit of degree");
  }
  const double bound = kPi * degree;
  if (s.area() <= bound) {
    std::ostringstream msg;
    msg << "Bradlow bound violated: area " << s.area() << " must exceed pi*N = " << bound
        << " for degree " << degree;
    throw BradlowBoundError(msg.str());
  }

  ReferenceBackground ref(s, degree, positions);
  Bundle bundle(s, H, ref);
  const RField& W = bundle.pair_weight;
  const double ref_curv = ref.curvature_coeff();

  NewtonResult res = newton_solve(s, W, ref_curv, initial_guess(W), opts);

  if (!res.converged && res.defect > opts.accept_tol && opts.continuation && degree > 0) {
    // Near the dissolving limit: walk the area down a factor-2 staircase,
    // warm-starting each stage from the previous one.
    std::vector<double> stages;
    double a = std::max(4.0 * bound, 2.0 * s.area());
    while (a > s.area() * 1.0001) {
      stages.push_back(a);
      a = std::max(a / 2.0, s.area());
    }
    stages.push_back(s.area());
    std::optional<RField> warm;
    for (double area_j : stages) {
      double scale = std::sqrt(area_j / s.area());
      Surface sj(s.grid(), scale * s.h());
      RField v0 = warm ? *warm : initial_guess(W);
      NewtonResult rj = newton_solve(sj, W, ref_curv, std::move(v0), opts);
      warm = rj.v;
      if (area_j == s.area()) res = rj;
    }
  }

  if (!res.converged && res.defect > opts.accept_tol) {
    std::ostringstream msg;
    msg << "Newton iteration did not converge after " << res.iterations
        << " steps; last defect " << res.defect;
    throw SolverConvergenceError(msg.str(), res.defect);
  }

  VortexSolution sol{std::move(bundle), std::move(positions), std::move(res.v),
                     Connection{}, Section{}, 0, 0, res.iterations};
  const Spectral& sp = s.spectral();
  CField vc = to_complex(sol.v);
  sol.A.a = OneForm::imaginary(0.5 * cplx(1, 0) * sp.deriv_z(vc));
  sol.psi.phi = CField(s.grid());
  for (std::size_t i = 0; i < sol.v.size(); ++i) sol.psi.phi[i] = std::exp(0.5 * sol.v[i]);
  auto [r1, r2] = vortex_residuals(sol.bundle, sol.A, sol.psi);
  sol.residual1 = r1;
  sol.residual2 = r2;
  return sol;
}

}  // namespace vlab
