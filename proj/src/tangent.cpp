#include "vlab/tangent.hpp"

#include <cmath>
#include <numbers>

#include "vlab/forms.hpp"

namespace vlab {

namespace {

constexpr double kPi = std::numbers::pi;

double torus_dist(cplx a, cplx b, double Lx, double Ly) {
  double dx = std::remainder(a.real() - b.real(), Lx);
  double dy = std::remainder(a.imag() - b.imag(), Ly);
  return std::hypot(dx, dy);
}

/// Nodes closer than radius to any vortex zero (true = masked).
std::vector<char> zero_mask(const Bundle& b, double radius) {
  std::vector<char> mask(b.grid().size(), 0);
  if (radius <= 0 || b.ref.zeros().empty()) return mask;
  const Grid& g = b.grid();
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      cplx z = g.z(ix, iy);
      for (cplx zk : b.ref.zeros()) {
        if (torus_dist(z, zk, g.Lx, g.Ly) <= radius) {
          mask[static_cast<std::size_t>(iy) * g.nx + ix] = 1;
          break;
        }
      }
    }
  }
  return mask;
}

}  // namespace

TangentVector gauge_vector_field(const VortexSolution& sol, const CField& zeta) {
  require_same_grid(zeta.grid, sol.bundle.grid(), "gauge_vector_field");
  double scale = max_abs(zeta);
  if (max_abs_real(zeta) > 1e-10 * std::max(scale, 1e-300)) {
    throw std::invalid_argument("gauge_vector_field: zeta must be purely imaginary");
  }
  const Spectral& sp = sol.bundle.surf.spectral();
  TangentVector X;
  X.alpha = OneForm::imaginary(sp.deriv_z(zeta));
  X.beta = CField(zeta.grid);
  for (std::size_t i = 0; i < zeta.size(); ++i) X.beta[i] = -zeta[i] * sol.psi.phi[i];
  X.dbar_beta = sp.deriv_zbar(X.beta);
  return X;
}

TangentVector apply_complex_structure(const TangentVector& X) {
  TangentVector out = X;
  out.alpha = hodge1(X.alpha);
  out.beta = cplx(0, 1) * X.beta;
  if (X.dbar_beta.size()) out.dbar_beta = cplx(0, 1) * X.dbar_beta;
  return out;
}

TangentVector tangent_from_positions(const VortexSolution& base, int vortex_index, int dir,
                                     double eps, const SolveOptions& opts) {
  const Bundle& b = base.bundle;
  const Grid& g = b.grid();
  const int N = b.ref.degree();
  if (vortex_index < 0 || vortex_index >= N) {
    throw std::invalid_argument("tangent_from_positions: vortex index out of range");
  }
  if (dir != 0 && dir != 1) throw std::invalid_argument("tangent_from_positions: dir must be 0 or 1");
  if (!(eps > 0)) throw std::invalid_argument("tangent_from_positions: eps must be positive");

  const cplx step = dir == 0 ? cplx(eps, 0) : cplx(0, eps);
  std::vector<cplx> plus = base.positions, minus = base.positions;
  plus[vortex_index] += step;
  minus[vortex_index] -= step;

  VortexSolution sol_p = solve_vortices(b.surf, b.metric, N, plus, opts);
  VortexSolution sol_m = solve_vortices(b.surf, b.metric, N, minus, opts);

  // Rebase both to the center trivialization. The reference ratios are
  // strictly periodic (equal degree, shared cocycle); beta keeps the
  // expected simple pole at the moved zero, guarded where sigma0 ~ 0.
  const CField& sigma0 = b.ref.sigma();
  double floor_sq = 1e-26 * max_abs(sigma0) * max_abs(sigma0);
  const Spectral& sp = b.surf.spectral();
  // dbar of the rebased coefficients, pushed through the reference ratio:
  // dbar(phi r) = r (dbar phi + (a01 - a01_rebased) phi), with the rebasing
  // shift a constant +/- pi step/(Lx Ly). Differentiating the rebased field
  // directly would have to cope with its pole at the moved zero.
  const cplx rebase_shift = kPi * step / (g.Lx * g.Ly);
  CField dphi_p = sp.deriv_zbar(sol_p.psi.phi), dphi_m = sp.deriv_zbar(sol_m.psi.phi);
  CField beta(g), dbar_beta(g);
  for (std::size_t i = 0; i < beta.size(); ++i) {
    if (std::norm(sigma0[i]) <= floor_sq) {
      beta[i] = 0;
      dbar_beta[i] = 0;
      continue;
    }
    cplx rp = sol_p.bundle.ref.sigma()[i] / sigma0[i];
    cplx rm = sol_m.bundle.ref.sigma()[i] / sigma0[i];
    beta[i] = (sol_p.psi.phi[i] * rp - sol_m.psi.phi[i] * rm) / (2.0 * eps);
    dbar_beta[i] = (rp * (dphi_p[i] + rebase_shift * sol_p.psi.phi[i]) -
                    rm * (dphi_m[i] - rebase_shift * sol_m.psi.phi[i])) /
                   (2.0 * eps);
  }

  // The reference connections differ by a constant flat piece tracking the
  // zero sum; include its derivative alongside the periodic parts.
  cplx wilson10 = kPi / (g.Lx * g.Ly) * (dir == 0 ? cplx(1, 0) : cplx(0, -1));
  CField c10(g);
  for (std::size_t i = 0; i < c10.size(); ++i) {
    c10[i] = (sol_p.A.a.c10[i] - sol_m.A.a.c10[i]) / (2.0 * eps) + wilson10;
  }

  TangentVector X;
  X.alpha = OneForm::imaginary(c10);
  X.beta = std::move(beta);
  X.dbar_beta = std::move(dbar_beta);
  X.mask_radius = 3.0 * std::max(g.dx(), g.dy());

  double nrm = tangent_norm(b, X);
  if (nrm > 0) {
    TangentVector unit = tangent_scale(1.0 / nrm, X);
    unit.mask_radius = X.mask_radius;
    X.linearization_warning = linearized_curvature_defect(base, unit) > 1e-4;
  }
  return X;
}

TangentVector gauge_project(const VortexSolution& sol, const TangentVector& X) {
  const Bundle& b = sol.bundle;
  const Grid& g = b.grid();
  require_same_grid(X.beta.grid, g, "gauge_project");
  if (!X.alpha.imaginary_valued) {
    throw std::invalid_argument("gauge_project: alpha must be imaginary-valued");
  }
  const Spectral& sp = b.surf.spectral();

  // Normal equations for zeta = i s minimizing ||X - X_zeta||_G:
  //   (-lap + 4 |Psi|^2_H h^2) s = -2 (dx Im c + dy Re c) - 4 Im(beta conj(phi)) W h^2
  RField im_c = imag_part(X.alpha.c10), re_c = real_part(X.alpha.c10);
  RField dxi = real_part(sp.deriv_x(to_complex(im_c)));
  RField dyr = real_part(sp.deriv_y(to_complex(re_c)));
  RField dens = sol.density();
  RField q(g), rhs(g);
  const RField& h_sq = b.surf.h_sq();
  for (std::size_t i = 0; i < q.size(); ++i) {
    q[i] = 4.0 * dens[i] * h_sq[i];
    double im_bphi = std::imag(X.beta[i] * std::conj(sol.psi.phi[i]));
    rhs[i] = -2.0 * (dxi[i] + dyr[i]) - 4.0 * im_bphi * b.pair_weight[i] * h_sq[i];
  }
  RField s_opt = solve_spd_schroedinger(sp, q, rhs, 1e-12, 2000);

  // relative residual of the solve, recorded as the projection defect
  RField As = sp.laplacian(s_opt);
  double rnorm = 0, bnorm = 0;
  for (std::size_t i = 0; i < As.size(); ++i) {
    double r = (-As[i] + q[i] * s_opt[i]) - rhs[i];
    rnorm += r * r;
    bnorm += rhs[i] * rhs[i];
  }

  CField sc = to_complex(s_opt);
  CField ds = sp.deriv_z(sc);
  CField ds_bar = sp.deriv_zbar(sc);
  CField dphi = sp.deriv_zbar(sol.psi.phi);
  TangentVector out;
  CField c10(g);
  for (std::size_t i = 0; i < c10.size(); ++i) c10[i] = X.alpha.c10[i] - cplx(0, 1) * ds[i];
  out.alpha = OneForm::imaginary(c10);
  out.beta = CField(g);
  out.dbar_beta = X.dbar_beta.size() ? X.dbar_beta : sp.deriv_zbar(X.beta);
  for (std::size_t i = 0; i < out.beta.size(); ++i) {
    out.beta[i] = X.beta[i] + cplx(0, s_opt[i]) * sol.psi.phi[i];
    out.dbar_beta[i] += cplx(0, 1) * (ds_bar[i] * sol.psi.phi[i] + s_opt[i] * dphi[i]);
  }
  out.gauge_projected = true;
  out.projection_defect = bnorm > 0 ? std::sqrt(rnorm / bnorm) : 0.0;
  out.mask_radius = X.mask_radius;
  out.linearization_warning = X.linearization_warning;
  return out;
}

TangentVector gauge_pushforward(const Surface& s, const RField& chi, const TangentVector& X) {
  require_same_grid(chi.grid, X.beta.grid, "gauge_pushforward");
  TangentVector out = X;
  CField dchi;
  if (X.dbar_beta.size()) {
    // dbar(e^{-i chi} beta) = e^{-i chi}(dbar beta - i (dbar chi) beta)
    dchi = s.spectral().deriv_zbar(to_complex(chi));
  }
  for (std::size_t i = 0; i < out.beta.size(); ++i) {
    cplx phase = std::exp(cplx(0, -chi[i]));
    out.beta[i] *= phase;
    if (X.dbar_beta.size()) {
      out.dbar_beta[i] = phase * (X.dbar_beta[i] - cplx(0, 1) * dchi[i] * X.beta[i]);
    }
  }
  return out;
}

double linearized_curvature_defect(const VortexSolution& sol, const TangentVector& X) {
  const Bundle& b = sol.bundle;
  TwoForm da = d_one_form(b.surf, X.alpha);
  std::vector<char> mask = zero_mask(b, X.mask_radius);
  double defect = 0;
  const RField& h_sq = b.surf.h_sq();
  for (std::size_t i = 0; i < da.c.size(); ++i) {
    if (mask[i]) continue;
    double sec = 2.0 * std::real(X.beta[i] * std::conj(sol.psi.phi[i])) * b.pair_weight[i] * h_sq[i];
    defect = std::max(defect, std::abs(da.c[i] + sec));
  }
  return defect;
}

double linearized_dbar_defect(const VortexSolution& sol, const TangentVector& X) {
  const Bundle& b = sol.bundle;
  CField dbeta = X.dbar_beta.size() ? X.dbar_beta : b.surf.spectral().deriv_zbar(X.beta);
  std::vector<char> mask = zero_mask(b, X.mask_radius);
  double sum = 0;
  for (std::size_t i = 0; i < dbeta.size(); ++i) {
    if (mask[i]) continue;
    cplx r = dbeta[i] + sol.A.a.c01[i] * X.beta[i] + X.alpha.c01[i] * sol.psi.phi[i];
    sum += std::norm(r) * b.pair_weight[i];
  }
  return std::sqrt(sum * b.grid().dx() * b.grid().dy());
}

TangentVector tangent_add(const TangentVector& X, const TangentVector& Y) {
  TangentVector out;
  CField c10 = X.alpha.c10 + Y.alpha.c10;
  out.alpha = X.alpha.imaginary_valued && Y.alpha.imaginary_valued
                  ? OneForm::imaginary(c10)
                  : OneForm::general(c10, X.alpha.c01 + Y.alpha.c01);
  out.beta = X.beta + Y.beta;
  if (X.dbar_beta.size() && Y.dbar_beta.size()) out.dbar_beta = X.dbar_beta + Y.dbar_beta;
  out.mask_radius = std::max(X.mask_radius, Y.mask_radius);
  return out;
}

TangentVector tangent_scale(double s, const TangentVector& X) {
  TangentVector out = X;
  out.alpha.c10 = cplx(s, 0) * X.alpha.c10;
  out.alpha.c01 = cplx(s, 0) * X.alpha.c01;
  out.beta = cplx(s, 0) * X.beta;
  if (X.dbar_beta.size()) out.dbar_beta = cplx(s, 0) * X.dbar_beta;
  return out;
}

}  // namespace vlab
