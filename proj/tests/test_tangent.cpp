#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vlab/forms.hpp"
#include "vlab/random_fields.hpp"

using namespace vlab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

VortexSolution center_solution(int n) {
  Surface s(Grid{n, n, kTwoPi, kTwoPi}, 1.0);
  return solve_vortices(s, HermitianMetric::constant(s.grid()), 1, {cplx(kPi, kPi)});
}

/// Finite-difference linearization of the moment map along X, two-sided.
RField fd_moment_map_derivative(const VortexSolution& sol, const TangentVector& X, double eps) {
  auto mu_at = [&](double t) {
    Connection A;
    A.a = OneForm::imaginary(sol.A.a.c10 + cplx(t, 0) * X.alpha.c10);
    Section psi;
    psi.phi = sol.psi.phi + cplx(t, 0) * X.beta;
    return moment_map(sol.bundle, A, psi);
  };
  TwoForm plus = mu_at(eps), minus = mu_at(-eps);
  RField out(sol.v.grid);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ((plus.c[i] - minus.c[i]) / (2 * eps)).real();
  }
  return out;
}

}  // namespace

TEST_CASE("gauge vector field: constant direction and input validation") {
  VortexSolution sol = center_solution(64);
  const Grid& g = sol.v.grid;

  CField zeta(g);
  for (auto& x : zeta.v) x = cplx(0, 0.8);
  TangentVector X = gauge_vector_field(sol, zeta);
  CHECK(max_abs(X.alpha.c10) < 1e-13);
  for (std::size_t i = 0; i < X.beta.size(); ++i) {
    CHECK(std::abs(X.beta[i] + cplx(0, 0.8) * sol.psi.phi[i]) < 1e-14);
  }
  CHECK(metric_g(sol.bundle, X, X) > 0);

  CField bad(g);
  for (auto& x : bad.v) x = cplx(0.3, 0.1);
  CHECK_THROWS_AS(gauge_vector_field(sol, bad), std::invalid_argument);
}

TEST_CASE("gauge orbit directions stay tangent to the solution space") {
  VortexSolution sol = center_solution(96);
  Rng rng(5);
  CField zeta = random_imaginary_field(sol.bundle.surf, rng, 5);
  TangentVector X = normalized(sol.bundle, gauge_vector_field(sol, zeta));

  CHECK(linearized_curvature_defect(sol, X) < 1e-8);
  CHECK(linearized_dbar_defect(sol, X) < 1e-10);

  // the finite-difference linearization oracle agrees with the direct field
  RField fd = fd_moment_map_derivative(sol, X, 1e-4);
  CHECK(max_abs(fd) < 1e-8);

  TangentVector Y = random_tangent(sol.bundle, rng, 6);
  RField fd_y = fd_moment_map_derivative(sol, Y, 1e-4);
  TwoForm da = d_one_form(sol.bundle.surf, Y.alpha);
  double worst = 0;
  for (std::size_t i = 0; i < fd_y.size(); ++i) {
    double direct = da.c[i].real() + 2.0 * std::real(Y.beta[i] * std::conj(sol.psi.phi[i])) *
                                         sol.bundle.pair_weight[i] * sol.bundle.surf.h_sq()[i];
    worst = std::max(worst, std::abs(fd_y[i] - direct));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("gauge projection: kills orbit directions, idempotent, orthogonal") {
  VortexSolution sol = center_solution(96);
  Rng rng(11);

  CField zeta = random_imaginary_field(sol.bundle.surf, rng, 5);
  TangentVector Xz = gauge_vector_field(sol, zeta);
  TangentVector Pz = gauge_project(sol, Xz);
  CHECK(tangent_norm(sol.bundle, Pz) / tangent_norm(sol.bundle, Xz) < 1e-8);

  TangentVector X = random_tangent(sol.bundle, rng, 6);
  TangentVector P = gauge_project(sol, X);
  CHECK(P.gauge_projected);
  CHECK(P.projection_defect < 1e-10);

  TangentVector PP = gauge_project(sol, P);
  TangentVector diff = tangent_add(PP, tangent_scale(-1.0, P));
  CHECK(tangent_norm(sol.bundle, diff) / tangent_norm(sol.bundle, P) < 1e-10);

  double worst = 0;
  for (int k = 0; k < 16; ++k) {
    CField z = random_imaginary_field(sol.bundle.surf, rng, 5);
    TangentVector Xk = gauge_vector_field(sol, z);
    worst = std::max(worst, std::abs(metric_g(sol.bundle, P, Xk)) /
                                (tangent_norm(sol.bundle, P) * tangent_norm(sol.bundle, Xk)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("position tangents: Richardson consistency and linearization quality") {
  VortexSolution sol = center_solution(96);

  TangentVector p_coarse = gauge_project(sol, tangent_from_positions(sol, 0, 0, 1e-3));
  TangentVector p_mid = gauge_project(sol, tangent_from_positions(sol, 0, 0, 5e-4));
  TangentVector p_fine = gauge_project(sol, tangent_from_positions(sol, 0, 0, 2.5e-4));

  double d1 = tangent_norm(sol.bundle, tangent_add(p_coarse, tangent_scale(-1.0, p_mid)));
  double d2 = tangent_norm(sol.bundle, tangent_add(p_mid, tangent_scale(-1.0, p_fine)));
  CHECK(d1 < 5e-6 * tangent_norm(sol.bundle, p_mid));
  // second-order differencing: successive differences shrink by about 4
  CHECK(d1 / d2 > 2.5);
  CHECK(d1 / d2 < 6.0);

  TangentVector unit = normalized(sol.bundle, p_mid);
  CHECK(linearized_curvature_defect(sol, unit) < 1e-6);
  CHECK(linearized_dbar_defect(sol, unit) < 1e-6);

  // an over-large step trips the linearization warning
  TangentVector coarse = tangent_from_positions(sol, 0, 0, 0.2);
  CHECK(coarse.linearization_warning);
}

TEST_CASE("orthogonality makes I preserve tangency, and orbit directions break it") {
  VortexSolution sol = center_solution(96);
  Rng rng(17);

  for (int dir : {0, 1}) {
    TangentVector P = gauge_project(sol, tangent_from_positions(sol, 0, dir, 5e-4));
    TangentVector unit = normalized(sol.bundle, P);
    CHECK(linearized_curvature_defect(sol, apply_complex_structure(unit)) < 1e-6);
    // the dbar linearization is complex-linear, so I changes nothing there
    double l2 = linearized_dbar_defect(sol, unit);
    double l2i = linearized_dbar_defect(sol, apply_complex_structure(unit));
    CHECK(std::abs(l2 - l2i) < 1e-12);
  }

  CField zeta = random_imaginary_field(sol.bundle.surf, rng, 4);
  TangentVector Xz = normalized(sol.bundle, gauge_vector_field(sol, zeta));
  CHECK(linearized_curvature_defect(sol, apply_complex_structure(Xz)) > 1e-3);
}

TEST_CASE("translation tangents are isotropic and well conditioned at the center") {
  VortexSolution sol = center_solution(96);
  TangentVector px = gauge_project(sol, tangent_from_positions(sol, 0, 0, 5e-4));
  TangentVector py = gauge_project(sol, tangent_from_positions(sol, 0, 1, 5e-4));

  double gxx = metric_g(sol.bundle, px, px);
  double gyy = metric_g(sol.bundle, py, py);
  double gxy = metric_g(sol.bundle, px, py);
  CHECK(std::abs(gxx - gyy) / gxx < 1e-6);
  CHECK(std::abs(gxy) / gxx < 1e-6);

  double tr = gxx + gyy, det = gxx * gyy - gxy * gxy;
  double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  double cond = (tr / 2 + disc) / (tr / 2 - disc);
  CHECK(cond < 1e3);
}

TEST_CASE("I squares to minus one and the pushforward story is exact") {
  VortexSolution sol = center_solution(64);
  Rng rng(23);
  TangentVector X = random_tangent(sol.bundle, rng, 6);

  TangentVector XX = apply_complex_structure(apply_complex_structure(X));
  for (std::size_t i = 0; i < X.beta.size(); ++i) {
    CHECK(XX.beta[i] == -X.beta[i]);
    CHECK(XX.alpha.c10[i] == -X.alpha.c10[i]);
  }

  RField chi = 0.4 * random_real_field(sol.bundle.surf, rng, 2);
  TangentVector Y = random_tangent(sol.bundle, rng, 6);
  TangentVector Xg = gauge_pushforward(sol.bundle.surf, chi, X);
  TangentVector Yg = gauge_pushforward(sol.bundle.surf, chi, Y);
  CHECK(std::abs(metric_g(sol.bundle, Xg, Yg) - metric_g(sol.bundle, X, Y)) <
        1e-12 * (1 + std::abs(metric_g(sol.bundle, X, Y))));
  CHECK(std::abs(omega(sol.bundle, Xg, Yg) - omega(sol.bundle, X, Y)) <
        1e-12 * (1 + std::abs(omega(sol.bundle, X, Y))));

  TangentVector lhs = apply_complex_structure(Xg);
  TangentVector rhs = gauge_pushforward(sol.bundle.surf, chi, apply_complex_structure(X));
  double worst = 0;
  for (std::size_t i = 0; i < lhs.beta.size(); ++i) {
    worst = std::max(worst, std::abs(lhs.beta[i] - rhs.beta[i]));
  }
  CHECK(worst < 1e-14);

  // pushforward keeps the carried dbar consistent with the field
  CField direct = sol.bundle.surf.spectral().deriv_zbar(Xg.beta);
  double dworst = 0;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    dworst = std::max(dworst, std::abs(direct[i] - Xg.dbar_beta[i]));
  }
  CHECK(dworst < 1e-8);
}

TEST_CASE("tangent_from_positions validates its arguments") {
  VortexSolution sol = center_solution(48);
  CHECK_THROWS_AS(tangent_from_positions(sol, 1, 0, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(tangent_from_positions(sol, 0, 2, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(tangent_from_positions(sol, 0, 0, -1.0), std::invalid_argument);
}
