#include "vlab/battery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "vlab/random_fields.hpp"

namespace vlab {

namespace {

using ojson = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

struct Battery {
  const RunConfig& cfg;
  const BatteryHooks& hooks;
  std::vector<VerificationReport> reports;

  void add(const std::string& name, double defect, double tol, const std::string& note) {
    reports.push_back({name, defect, tol, defect <= tol, note});
  }
};

std::string num(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << x;
  return ss.str();
}

/// Hamiltonian along the straight line p + t X.
double hamiltonian_at(const VortexSolution& sol, const TangentVector& X, const CField& zeta,
                      double t) {
  Connection A;
  A.a = OneForm::imaginary(sol.A.a.c10 + cplx(t, 0) * X.alpha.c10);
  Section psi;
  psi.phi = sol.psi.phi + cplx(t, 0) * X.beta;
  return hamiltonian(sol.bundle, A, psi, zeta);
}

void check_star_conventions(Battery& b, const Surface& s, Rng& rng) {
  CField a = random_complex_field(s, rng, 6);
  OneForm p = OneForm::imaginary(a);

  // *1 (a dz - conj(a) dzbar) = -i (a dz + conj(a) dzbar)
  OneForm sp1 = hodge1(p);
  double d1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d1 = std::max(d1, std::abs(sp1.c10[i] - cplx(0, -1) * a[i]));
    d1 = std::max(d1, std::abs(sp1.c01[i] - cplx(0, -1) * std::conj(a[i])));
  }
  b.add("hodge1-convention", d1, 1e-12, "*1(a dz - conj(a) dzbar) = -i(a dz + conj(a) dzbar)");

  OneForm pp = hodge1(hodge1(p));
  double d2 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d2 = std::max(d2, std::abs(pp.c10[i] + p.c10[i]));
    d2 = std::max(d2, std::abs(pp.c01[i] + p.c01[i]));
  }
  b.add("hodge1-involution", d2, 0.0, "*1*1 = -1, exact");

  OneForm q = OneForm::general(a, CField(a.grid));
  OneForm sq = hodge2(q);
  double d3 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d3 = std::max(d3, std::abs(sq.c01[i] + std::conj(a[i])));
    d3 = std::max(d3, std::abs(sq.c10[i]));
  }
  b.add("hodge2-convention", d3, 0.0, "*2(eta dz) = -conj(eta) dzbar");

  OneForm qq = hodge2(hodge2(q));
  double d4 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d4 = std::max(d4, std::abs(qq.c10[i] + q.c10[i]));
    d4 = std::max(d4, std::abs(qq.c01[i] + q.c01[i]));
  }
  b.add("hodge2-involution", d4, 0.0, "*2*2 = -1, exact");
}

void check_theta_forms(Battery& b, const Surface& s) {
  ThetaForms tf = theta_forms(s);
  TwoForm w1 = wedge_one_one(tf.theta, tf.theta_bar);
  TwoForm w2 = wedge_one_one(tf.theta_bar, tf.theta);
  double d = 0;
  for (std::size_t i = 0; i < w1.c.size(); ++i) {
    d = std::max(d, std::abs(w1.c[i] - s.h_sq()[i]));
    d = std::max(d, std::abs(w2.c[i] + s.h_sq()[i]));
  }
  b.add("theta-wedge-volume", d, 0.0, "theta ^ thetabar = omega and thetabar ^ theta = -omega");
}

void check_re_wedge_half(Battery& b, const Surface& s, Rng& rng) {
  OneForm a1 = OneForm::imaginary(random_complex_field(s, rng, 6));
  OneForm a2 = OneForm::imaginary(random_complex_field(s, rng, 6));
  // Re int a1^{01} ^ a2^{10} = 1/2 int a1 ^ a2
  CField zero(s.grid());
  OneForm p01 = OneForm::general(zero, a1.c01);
  OneForm p10 = OneForm::general(a2.c10, zero);
  double lhs = integrate_two_form(s, wedge_one_one(p01, p10)).real();
  double rhs = 0.5 * integrate_two_form(s, wedge_one_one(a1, a2)).real();
  b.add("re-wedge-half-identity", std::abs(lhs - rhs) / (1.0 + std::abs(rhs)), 1e-12,
        "Re int a1_01 ^ a2_10 = (1/2) int a1 ^ a2");
}

void check_compatibility(Battery& b, const VortexSolution& sol, Rng& rng, int count) {
  const Bundle& bun = sol.bundle;
  double d_sym = 0, d_pos = 0, d_anti = 0, d_compat = 0, d_selfzero = 0, d_inv = 0;
  double min_g = 1e300;
  for (int i = 0; i < count; ++i) {
    TangentVector X = random_tangent(bun, rng, 6);
    TangentVector Y = random_tangent(bun, rng, 6);
    double gxy = metric_g(bun, X, Y), gyx = metric_g(bun, Y, X);
    double oxy = omega(bun, X, Y), oyx = omega(bun, Y, X);
    double scale = 1.0 + std::abs(gxy) + std::abs(oxy);
    d_sym = std::max(d_sym, std::abs(gxy - gyx) / scale);
    d_anti = std::max(d_anti, std::abs(oxy + oyx) / scale);
    d_selfzero = std::max(d_selfzero, std::abs(omega(bun, X, X)));
    double gxx = metric_g(bun, X, X);
    min_g = std::min(min_g, gxx);
    d_compat = std::max(d_compat, std::abs(oxy - metric_g(bun, apply_complex_structure(X), Y)) / scale);
    // I-invariance: Omega(IX, IY) = Omega(X, Y)
    double oii = omega(bun, apply_complex_structure(X), apply_complex_structure(Y));
    d_inv = std::max(d_inv, std::abs(oii - oxy) / scale);
    TangentVector XX = apply_complex_structure(apply_complex_structure(X));
    double d_sq = 0;
    for (std::size_t j = 0; j < X.beta.size(); ++j) {
      d_sq = std::max(d_sq, std::abs(XX.beta[j] + X.beta[j]));
      d_sq = std::max(d_sq, std::abs(XX.alpha.c10[j] + X.alpha.c10[j]));
    }
    d_pos = std::max(d_pos, d_sq);
  }
  b.add("metric-symmetry", d_sym, 1e-10, "G(X,Y) = G(Y,X), " + std::to_string(count) + " pairs");
  b.add("metric-positivity", std::max(0.0, -min_g), 0.0, "min G(X,X) = " + num(min_g));
  b.add("omega-antisymmetry", std::max(d_anti, d_selfzero), 1e-10, "Omega antisymmetric, Omega(X,X)=0");
  b.add("compatibility-omega-metric", d_compat, 1e-10, "Omega(X,Y) = G(IX,Y)");
  b.add("omega-i-invariance", d_inv, 1e-10, "Omega(IX,IY) = Omega(X,Y)");
  b.add("complex-structure-involution", d_pos, 0.0, "I^2 = -1, exact");
}

void check_gauge_invariance(Battery& b, const VortexSolution& sol, const FixedSection& psi0,
                            Rng& rng, int gauges) {
  const Bundle& bun = sol.bundle;
  double d_g = 0, d_o = 0, d_op = 0, d_equi = 0;
  for (int k = 0; k < gauges; ++k) {
    RField chi = 2.0 * random_real_field(bun.surf, rng, 5);
    TangentVector X = random_tangent(bun, rng, 6);
    TangentVector Y = random_tangent(bun, rng, 6);
    TangentVector Xg = gauge_pushforward(bun.surf, chi, X), Yg = gauge_pushforward(bun.surf, chi, Y);
    double scale = 1.0 + std::abs(metric_g(bun, X, Y));
    d_g = std::max(d_g, std::abs(metric_g(bun, Xg, Yg) - metric_g(bun, X, Y)) / scale);
    d_o = std::max(d_o, std::abs(omega(bun, Xg, Yg) - omega(bun, X, Y)) / scale);
    d_op = std::max(d_op,
                    std::abs(omega_psi0(bun, psi0, Xg, Yg) - omega_psi0(bun, psi0, X, Y)) / scale);
    TangentVector lhs = apply_complex_structure(Xg);
    TangentVector rhs = gauge_pushforward(bun.surf, chi, apply_complex_structure(X));
    for (std::size_t j = 0; j < lhs.beta.size(); ++j) {
      d_equi = std::max(d_equi, std::abs(lhs.beta[j] - rhs.beta[j]));
      d_equi = std::max(d_equi, std::abs(lhs.alpha.c10[j] - rhs.alpha.c10[j]));
    }
  }
  b.add("gauge-invariance-metric", d_g, 1e-10, std::to_string(gauges) + " random gauges");
  b.add("gauge-invariance-omega", d_o, 1e-10, std::to_string(gauges) + " random gauges");
  b.add("gauge-invariance-omega-psi0", d_op, 1e-10, std::to_string(gauges) + " random gauges");
  b.add("complex-structure-equivariance", d_equi, 1e-12, "I commutes with pushforward");
}

void check_moment_map(Battery& b, const VortexSolution& sol) {
  TwoForm mu = moment_map(sol.bundle, sol.A, sol.psi);
  b.add("moment-map-zero", max_abs(mu.c), 1e-8, "mu = 0 at the solution");
  b.add("bradlow-integral-identity", sol.integral_identity_defect(), 1e-6,
        "area - int |Psi|^2_H h^2 = pi N");
  TwoForm F = curvature(sol.bundle, sol.A);
  cplx total = integrate_two_form(sol.bundle.surf, F);
  double deg = (total / cplx(0, -2 * kPi)).real();
  b.add("degree-quantization", std::abs(deg - sol.bundle.ref.degree()), 1e-10,
        "int F / (-2 pi i) = N");
}

void check_hamiltonian(Battery& b, const VortexSolution& sol, Rng& rng, int count, double eps) {
  const Bundle& bun = sol.bundle;
  double d_id = 0, d_rich = 0, d_real = 0, d_lin = 0;
  bool all_floor = true;
  for (int i = 0; i < count; ++i) {
    CField zeta = random_imaginary_field(bun.surf, rng, 5);
    TangentVector X = random_tangent(bun, rng, 6);
    TangentVector Xz = gauge_vector_field(sol, zeta);
    double target = omega(bun, Xz, X);
    auto fd = [&](double e) {
      return (hamiltonian_at(sol, X, zeta, e) - hamiltonian_at(sol, X, zeta, -e)) / (2 * e);
    };
    double scale = 1.0 + std::abs(target);
    double de = std::abs(fd(eps) - target) / scale;
    double d2e = std::abs(fd(2 * eps) - target) / scale;
    d_id = std::max(d_id, de);
    if (de > 1e-10 || d2e > 1e-10) {
      all_floor = false;
      double ratio = d2e / std::max(de, 1e-300);
      d_rich = std::max(d_rich, std::abs(ratio - 4.0));
    }
    // linearity in zeta
    CField zeta2 = random_imaginary_field(bun.surf, rng, 5);
    CField zsum = zeta + zeta2;
    double lin = std::abs(hamiltonian(bun, sol.A, sol.psi, zsum) -
                          hamiltonian(bun, sol.A, sol.psi, zeta) -
                          hamiltonian(bun, sol.A, sol.psi, zeta2));
    d_lin = std::max(d_lin, lin);
    // realness of the pairing for imaginary zeta
    TwoForm mu = moment_map(bun, sol.A, sol.psi);
    for (std::size_t j = 0; j < mu.c.size(); ++j) mu.c[j] *= zeta[j];
    cplx full = integrate_two_form(bun.surf, mu);
    d_real = std::max(d_real, std::abs(full.imag()) / (1.0 + std::abs(full.real())));
  }
  b.add("hamiltonian-identity", d_id, 1e-6,
        "dH_zeta(X) = Omega(X_zeta, X), central differences at eps = " + num(eps));
  // H_zeta is quadratic along straight lines, so the central difference is
  // exact up to roundoff; the ratio test only applies above the floor.
  b.add("hamiltonian-richardson", all_floor ? 0.0 : d_rich, 1.0,
        all_floor ? "defects at roundoff floor for both eps and 2 eps" : "ratio vs 4");
  b.add("hamiltonian-linearity", d_lin, 1e-12, "H_{z1+z2} = H_{z1} + H_{z2}");
  b.add("hamiltonian-real", d_real, 1e-10, "Im H_zeta = 0 for imaginary zeta");
}

void check_lemma_orthogonality(Battery& b, const VortexSolution& sol,
                               const std::vector<TangentVector>& projected, Rng& rng) {
  const Bundle& bun = sol.bundle;
  double d_fwd = 0;
  for (const TangentVector& X : projected) {
    TangentVector Xn = normalized(bun, X);
    d_fwd = std::max(d_fwd, linearized_curvature_defect(sol, apply_complex_structure(Xn)));
  }
  b.add("lemma-orthogonal-forward", d_fwd, 1e-6,
        "projected moduli tangents: I X stays tangent to the solution space");

  CField zeta = random_imaginary_field(bun.surf, rng, 4);
  TangentVector Xz = normalized(bun, gauge_vector_field(sol, zeta));
  double orbit_defect = linearized_curvature_defect(sol, Xz);
  b.add("gauge-orbit-linearization", orbit_defect, 1e-8, "orbit directions stay tangent");
  double probe = linearized_curvature_defect(sol, apply_complex_structure(Xz));
  b.add("lemma-nonorthogonal-probe", probe > 1e-3 ? 0.0 : 1e-3 - probe, 0.0,
        "I X_zeta leaves the solution space; defect " + num(probe));
}

void check_projection(Battery& b, const VortexSolution& sol, Rng& rng) {
  const Bundle& bun = sol.bundle;
  TangentVector X = random_tangent(bun, rng, 6);
  TangentVector P = gauge_project(sol, X);
  double d_orth = 0;
  for (int i = 0; i < 16; ++i) {
    CField zeta = random_imaginary_field(bun.surf, rng, 5);
    TangentVector Xz = gauge_vector_field(sol, zeta);
    double val = std::abs(metric_g(bun, P, Xz));
    d_orth = std::max(d_orth, val / (tangent_norm(bun, P) * tangent_norm(bun, Xz)));
  }
  b.add("projection-orthogonality", d_orth, 1e-8, "16 random gauge directions");

  TangentVector PP = gauge_project(sol, P);
  TangentVector diff = tangent_add(PP, tangent_scale(-1.0, P));
  double d_idem = tangent_norm(bun, diff) / std::max(tangent_norm(bun, P), 1e-300);
  b.add("projection-idempotent", d_idem, 1e-10, "project(project(X)) = project(X)");

  CField zeta = random_imaginary_field(bun.surf, rng, 5);
  TangentVector Xz = gauge_vector_field(sol, zeta);
  TangentVector Pz = gauge_project(sol, Xz);
  double d_orbit = tangent_norm(bun, Pz) / std::max(tangent_norm(bun, Xz), 1e-300);
  b.add("projection-kills-orbit", d_orbit, 1e-8, "project(X_zeta) = 0");
}

void check_omega_psi0(Battery& b, const VortexSolution& sol, const FixedSection& psi0, Rng& rng,
                      int count) {
  const Bundle& bun = sol.bundle;
  double d_match = 0, worst_negativity = -1e300, d_gsym = 0;
  double min_gpsi = 1e300;
  for (int i = 0; i < count; ++i) {
    TangentVector X = random_tangent(bun, rng, 6);
    double lhs = omega_psi0(bun, psi0, apply_complex_structure(X), X);
    double rhs = omega_psi0_diagonal(bun, psi0, X);
    d_match = std::max(d_match, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    worst_negativity = std::max(worst_negativity, lhs);
    TangentVector Y = random_tangent(bun, rng, 6);
    double g1 = metric_g_psi0(bun, psi0, X, Y), g2 = metric_g_psi0(bun, psi0, Y, X);
    d_gsym = std::max(d_gsym, std::abs(g1 - g2) / (1.0 + std::abs(g1)));
    min_gpsi = std::min(min_gpsi, metric_g_psi0(bun, psi0, X, X));
  }
  b.add("omega-psi0-closed-form", d_match, 1e-10,
        "Omega_psi0(IX,X) = -4 int |a|^2 - 4 int |beta|^2_H |Psi0|^2_H h^2");
  b.add("omega-psi0-negativity", std::max(0.0, worst_negativity), 0.0,
        "max Omega_psi0(IX,X) = " + num(worst_negativity));
  b.add("metric-psi0-symmetry", d_gsym, 1e-10, "G_psi0 symmetric");
  b.add("metric-psi0-positivity", std::max(0.0, -min_gpsi), 0.0,
        "min G_psi0(X,X) = " + num(min_gpsi));
  b.add("psi0-zero-measure", psi0.zero_fraction, 0.01,
        "fraction of grid with |Psi0|^2_H below 1e-12 of max");
}

void check_constancy(Battery& b, const VortexSolution& sol, Rng& rng) {
  // Omega, Omega_psi0 and G have constant coefficients on configuration
  // space: the evaluation never reads (A, Psi), so values taken "at" the
  // solution and at a deformed configuration agree exactly.
  const Bundle& bun = sol.bundle;
  TangentVector X = random_tangent(bun, rng, 6);
  TangentVector Y = random_tangent(bun, rng, 6);
  double at_solution_g = metric_g(bun, X, Y);
  double at_solution_o = omega(bun, X, Y);
  Connection deformed_A;
  deformed_A.a =
      OneForm::imaginary(sol.A.a.c10 + cplx(0.37, 0) * random_complex_field(bun.surf, rng, 5));
  Section deformed_psi;
  deformed_psi.phi = sol.psi.phi + cplx(0.29, 0) * random_complex_field(bun.surf, rng, 5);
  double moved_mu = max_abs(moment_map(bun, deformed_A, deformed_psi).c);
  double moved_g = metric_g(bun, X, Y);
  double moved_o = omega(bun, X, Y);
  double d = std::abs(at_solution_g - moved_g) + std::abs(at_solution_o - moved_o);
  b.add("omega-constancy", d / (1.0 + std::abs(at_solution_g)), 1e-12,
        "structurally constant coefficients; deformed configuration has |mu| = " + num(moved_mu));
}

void check_nondegeneracy(Battery& b, const VortexSolution& sol, const FixedSection& psi0,
                         const std::vector<TangentVector>& projected) {
  if (projected.size() < 2) {
    b.add("moduli-nondegeneracy", 0.0, 0.0, "no position moduli at degree 0");
    b.add("moduli-gram-condition", 0.0, 0.0, "no position moduli at degree 0");
    return;
  }
  const Bundle& bun = sol.bundle;
  const TangentVector &X = projected[0], &Y = projected[1];
  double g11 = metric_g(bun, X, X), g22 = metric_g(bun, Y, Y), g12 = metric_g(bun, X, Y);
  double om = omega_psi0(bun, psi0, X, Y);
  double normdet = (om * om) / (g11 * g22);
  b.add("moduli-nondegeneracy", normdet > 1e-6 ? 0.0 : 1e-6 - normdet, 0.0,
        "normalized |det Omega_psi0| on the position basis = " + num(normdet));
  // Gram condition of the 2x2 projected basis
  double tr = g11 + g22, det = g11 * g22 - g12 * g12;
  double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  double lmax = tr / 2 + disc, lmin = tr / 2 - disc;
  double cond = lmin > 0 ? lmax / lmin : 1e300;
  b.add("moduli-gram-condition", cond <= 1e3 ? 0.0 : cond - 1e3, 0.0,
        "cond(Gram) = " + num(cond));
}

void check_quillen(Battery& b, const VortexSolution& sol, const FixedSection& psi0, Rng& rng,
                   int count, bool sabotage, const std::string& label) {
  const Bundle& bun = sol.bundle;
  double d_two_routes = 0, d_reduction = 0, d_cross = 0, d_identity = 0;

  // two algebraic routes to the Kahler form on (0,1) parts
  for (int i = 0; i < 4; ++i) {
    ZeroOneForm p{random_complex_field(bun.surf, rng, 6)};
    ZeroOneForm q{random_complex_field(bun.surf, rng, 6)};
    double f1 = kahler_form_f(bun.surf, p, q);
    double f2 = kahler_form_f_wedge(bun.surf, p, q);
    d_two_routes = std::max(d_two_routes, std::abs(f1 - f2) / (1.0 + std::abs(f1)));
  }
  b.add("quillen-two-routes", d_two_routes, 1e-10,
        "Re int p ^ *2 q vs -(1/2) int of the completed wedge");

  // Psi0 = 0 collapses the shift
  FixedSection zero;
  zero.degree = bun.ref.degree();
  zero.weight = RField(bun.grid());
  zero.pair = CField(bun.grid());
  zero.zero_fraction = 1.0;
  for (int i = 0; i < 2; ++i) {
    TangentVector X = random_tangent(bun, rng, 6);
    TangentVector Y = random_tangent(bun, rng, 6);
    ZeroOneForm p{X.alpha.c01}, q{Y.alpha.c01};
    double f = kahler_form_f(bun.surf, p, q);
    for (int sgn : {+1, -1}) {
      d_reduction = std::max(
          d_reduction, std::abs(quillen_pm(bun, zero, X, Y, sgn) - f) / (1.0 + std::abs(f)));
    }
    // cross terms cancel in the sum: zero the section parts and compare to 2F
    TangentVector X0 = X;
    X0.beta = CField(bun.grid());
    X0.dbar_beta = CField(bun.grid());
    double sum = quillen_pm(bun, psi0, X0, Y, +1) + quillen_pm(bun, psi0, X0, Y, -1);
    d_cross = std::max(d_cross, std::abs(sum - 2.0 * f) / (1.0 + std::abs(f)));
  }
  b.add("quillen-reduction-zero-psi0", d_reduction, 1e-12, "quillen_pm = F when Psi0 = 0");
  b.add("quillen-cross-cancellation", d_cross, 1e-12,
        "mixed connection/section terms cancel between the two signs");

  // b-form gauge invariance
  {
    RField chi = 2.0 * random_real_field(bun.surf, rng, 5);
    Connection A = sol.A;
    Section psi = sol.psi;
    FixedSection psi0_g = psi0;
    for (std::size_t i = 0; i < psi0_g.pair.size(); ++i) {
      psi0_g.pair[i] *= std::exp(cplx(0, chi[i]));  // Psi0 -> e^{-i chi} Psi0
    }
    gauge_transform(bun, chi, A, psi);
    ZeroOneForm before = b_form(bun, sol.psi, psi0);
    ZeroOneForm after = b_form(bun, psi, psi0_g);
    double d = 0;
    for (std::size_t i = 0; i < before.c.size(); ++i) {
      d = std::max(d, std::abs(before.c[i] - after.c[i]));
    }
    b.add("b-form-gauge-invariance", d, 1e-12, "Psi and Psi0 transform together");
  }

  for (int i = 0; i < count; ++i) {
    TangentVector X = gauge_project(sol, random_tangent(bun, rng, 6));
    TangentVector Y = gauge_project(sol, random_tangent(bun, rng, 6));
    double sum = quillen_pm(bun, psi0, X, Y, +1) + quillen_pm(bun, psi0, X, Y, -1);
    double target = omega_psi0(bun, psi0, X, Y);
    if (sabotage) target = -target;
    d_identity = std::max(d_identity, std::abs(sum - target) / (1.0 + std::abs(target)));
  }
  b.add("prequantum-identity-" + label, d_identity, 1e-10,
        "F_{L+} + F_{L-} = (i/pi) Omega_psi0, prefactor stripped; " + std::to_string(count) +
            " projected pairs");
}

void check_prequantum_raw(Battery& b, const VortexSolution& sol, const FixedSection& psi0,
                          Rng& rng, int count, bool sabotage) {
  const Bundle& bun = sol.bundle;
  double d = 0;
  for (int i = 0; i < count; ++i) {
    TangentVector X = random_tangent(bun, rng, 6);
    TangentVector Y = random_tangent(bun, rng, 6);
    double sum = quillen_pm(bun, psi0, X, Y, +1) + quillen_pm(bun, psi0, X, Y, -1);
    double target = omega_psi0(bun, psi0, X, Y);
    if (sabotage) target = -target;
    d = std::max(d, std::abs(sum - target) / (1.0 + std::abs(target)));
  }
  b.add("prequantum-identity-raw-tangents", d, 1e-10,
        "identity holds on unprojected configuration-space tangents");
}

}  // namespace

bool BatteryResult::all_pass() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.pass; });
}

Surface surface_from_config(const RunConfig& c) {
  Grid g{c.nx, c.ny, c.lx, c.ly};
  return Surface(g, profile_field(g, c.h_profile, c.h_params));
}

HermitianMetric metric_from_config(const RunConfig& c, const Grid& g) {
  return HermitianMetric(profile_field(g, c.metric_profile, c.metric_params));
}

VortexSolution solve_from_config(const RunConfig& c) {
  Surface s = surface_from_config(c);
  HermitianMetric H = metric_from_config(c, s.grid());
  std::vector<cplx> pos;
  for (auto [x, y] : c.positions) pos.emplace_back(x, y);
  SolveOptions opts;
  opts.max_iter = c.max_iter;
  opts.tol = c.tol;
  opts.continuation = c.continuation;
  return solve_vortices(s, H, c.degree, pos, opts);
}

FixedSection psi0_from_config(const RunConfig& c, const VortexSolution& sol) {
  if (c.psi0_choice == "unit") return FixedSection::unit(sol.bundle);
  if (c.psi0_choice == "solved") return FixedSection::from_solution(sol);
  std::vector<cplx> zeros;
  for (auto [x, y] : c.psi0_zeros) zeros.emplace_back(x, y);
  return FixedSection::theta_zeros(sol.bundle, zeros);
}

BatteryResult run_verify_battery(const RunConfig& c, const BatteryHooks& hooks) {
  Battery b{c, hooks, {}};
  Rng rng(c.seed);

  VortexSolution sol = solve_from_config(c);
  const Surface& s = sol.bundle.surf;
  const int count = c.battery_count;
  const double eps = c.epsilons.empty() ? 1e-4 : c.epsilons.front();

  check_star_conventions(b, s, rng);
  check_theta_forms(b, s);
  check_re_wedge_half(b, s, rng);
  check_compatibility(b, sol, rng, count);

  FixedSection psi0_solved = FixedSection::from_solution(sol);
  check_gauge_invariance(b, sol, psi0_solved, rng, 8);
  check_moment_map(b, sol);
  check_hamiltonian(b, sol, rng, 16, eps);

  std::vector<TangentVector> projected;
  if (sol.bundle.ref.degree() >= 1) {
    for (int dir : {0, 1}) {
      TangentVector raw = tangent_from_positions(sol, 0, dir, 5e-4, SolveOptions{});
      projected.push_back(gauge_project(sol, raw));
    }
  }
  check_lemma_orthogonality(b, sol, projected, rng);
  check_projection(b, sol, rng);
  check_omega_psi0(b, sol, psi0_solved, rng, count);
  check_constancy(b, sol, rng);
  check_nondegeneracy(b, sol, psi0_solved, projected);

  check_quillen(b, sol, psi0_solved, rng, count, hooks.sabotage_omega, "solved");

  // shifted-zero theta section on the same bundle
  if (sol.bundle.ref.degree() >= 1) {
    std::vector<cplx> shifted = sol.positions;
    for (auto& z : shifted) z += cplx(0.31 * s.grid().Lx / 6.28, 0.17 * s.grid().Ly / 6.28);
    FixedSection psi0_theta = FixedSection::theta_zeros(sol.bundle, shifted);
    double d = 0;
    Rng rng_theta(c.seed + 101);
    for (int i = 0; i < count; ++i) {
      TangentVector X = gauge_project(sol, random_tangent(sol.bundle, rng_theta, 6));
      TangentVector Y = gauge_project(sol, random_tangent(sol.bundle, rng_theta, 6));
      double sum = quillen_pm(sol.bundle, psi0_theta, X, Y, +1) +
                   quillen_pm(sol.bundle, psi0_theta, X, Y, -1);
      double target = omega_psi0(sol.bundle, psi0_theta, X, Y);
      if (hooks.sabotage_omega) target = -target;
      d = std::max(d, std::abs(sum - target) / (1.0 + std::abs(target)));
    }
    b.add("prequantum-identity-theta", d, 1e-10,
          "theta-product Psi0 with shifted zeros; " + std::to_string(count) + " pairs");
  }

  // |Psi0|_H = 1 needs the trivial bundle; run that leg at degree zero.
  {
    RunConfig c0 = c;
    c0.degree = 0;
    c0.positions.clear();
    VortexSolution vac = solve_from_config(c0);
    FixedSection unit = FixedSection::unit(vac.bundle);
    Rng rng_unit(c.seed + 202);
    double d_id = 0, d_red = 0;
    for (int i = 0; i < count; ++i) {
      TangentVector X = gauge_project(vac, random_tangent(vac.bundle, rng_unit, 6));
      TangentVector Y = gauge_project(vac, random_tangent(vac.bundle, rng_unit, 6));
      double sum = quillen_pm(vac.bundle, unit, X, Y, +1) + quillen_pm(vac.bundle, unit, X, Y, -1);
      double target = omega_psi0(vac.bundle, unit, X, Y);
      if (hooks.sabotage_omega) target = -target;
      d_id = std::max(d_id, std::abs(sum - target) / (1.0 + std::abs(target)));
      d_red = std::max(d_red, std::abs(omega_psi0(vac.bundle, unit, X, Y) -
                                       omega(vac.bundle, X, Y)));
    }
    b.add("prequantum-identity-unit", d_id, 1e-10, "trivial bundle, |Psi0|_H = 1");
    b.add("omega-psi0-unit-reduction", d_red, 1e-12, "Omega_psi0 = Omega when |Psi0|_H = 1");
    check_prequantum_raw(b, vac, unit, rng_unit, 4, hooks.sabotage_omega);
  }

  return BatteryResult{std::move(b.reports)};
}

std::string reports_to_json(const std::vector<VerificationReport>& reports, const RunConfig& c) {
  ojson arr = ojson::array();
  for (const auto& r : reports) {
    ojson item;
    item["name"] = r.name;
    item["defect"] = r.defect;
    item["tolerance"] = r.tolerance;
    item["pass"] = r.pass;
    item["context"] = {{"grid", std::to_string(c.nx) + "x" + std::to_string(c.ny)},
                       {"degree", c.degree},
                       {"seed", c.seed},
                       {"note", r.context}};
    arr.push_back(item);
  }
  return arr.dump(2) + "\n";
}

std::string reports_to_table(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    char line[256];
    std::snprintf(line, sizeof line, "%-36s %-5s defect %-12.3e tol %-12.3e %s\n", r.name.c_str(),
                  r.pass ? "PASS" : "FAIL", r.defect, r.tolerance, r.context.c_str());
    out << line;
  }
  return out.str();
}

const std::vector<std::string>& required_identity_names() {
  static const std::vector<std::string> names = {
      "hodge1-convention",
      "hodge1-involution",
      "hodge2-convention",
      "hodge2-involution",
      "theta-wedge-volume",
      "re-wedge-half-identity",
      "metric-symmetry",
      "metric-positivity",
      "omega-antisymmetry",
      "compatibility-omega-metric",
      "omega-i-invariance",
      "complex-structure-involution",
      "gauge-invariance-metric",
      "gauge-invariance-omega",
      "gauge-invariance-omega-psi0",
      "complex-structure-equivariance",
      "moment-map-zero",
      "bradlow-integral-identity",
      "degree-quantization",
      "hamiltonian-identity",
      "hamiltonian-richardson",
      "hamiltonian-linearity",
      "hamiltonian-real",
      "lemma-orthogonal-forward",
      "lemma-nonorthogonal-probe",
      "gauge-orbit-linearization",
      "projection-orthogonality",
      "projection-idempotent",
      "projection-kills-orbit",
      "omega-psi0-closed-form",
      "omega-psi0-negativity",
      "metric-psi0-symmetry",
      "metric-psi0-positivity",
      "psi0-zero-measure",
      "omega-constancy",
      "moduli-nondegeneracy",
      "moduli-gram-condition",
      "quillen-two-routes",
      "quillen-reduction-zero-psi0",
      "quillen-cross-cancellation",
      "b-form-gauge-invariance",
      "prequantum-identity-solved",
      "prequantum-identity-theta",
      "prequantum-identity-unit",
      "prequantum-identity-raw-tangents",
      "omega-psi0-unit-reduction",
  };
  return names;
}

}  // namespace vlab
