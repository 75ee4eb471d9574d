#include "vlab/forms.hpp"

#include <cmath>

namespace vlab {

namespace {

double count_zero_fraction(const RField& w) {
  double wmax = max_abs(w);
  if (wmax == 0) return 1.0;
  std::size_t n = 0;
  for (double x : w.v) {
    if (x < 1e-12 * wmax) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(w.size());
}

/// 2i int Re<beta,eta>_H weight omega, as a real number.
double section_metric_term(const Bundle& b, const CField& beta, const CField& eta,
                           const RField* extra_weight) {
  TwoForm w;
  w.c = CField(b.grid());
  for (std::size_t i = 0; i < w.c.size(); ++i) {
    double re = std::real(beta[i] * std::conj(eta[i])) * b.pair_weight[i];
    if (extra_weight) re *= (*extra_weight)[i];
    w.c[i] = re * b.surf.h_sq()[i];
  }
  cplx val = cplx(0, 2) * integrate_two_form(b.surf, w);
  return val.real();
}

/// -int (beta H conj(eta) - conj(beta) H eta) weight omega, as a real number.
double section_omega_term(const Bundle& b, const CField& beta, const CField& eta,
                          const RField* extra_weight) {
  TwoForm w;
  w.c = CField(b.grid());
  for (std::size_t i = 0; i < w.c.size(); ++i) {
    cplx p = beta[i] * std::conj(eta[i]);
    cplx val = (p - std::conj(p)) * b.pair_weight[i];
    if (extra_weight) val *= (*extra_weight)[i];
    w.c[i] = val * b.surf.h_sq()[i];
  }
  return -integrate_two_form(b.surf, w).real();
}

}  // namespace

FixedSection FixedSection::unit(const Bundle& b) {
  if (b.ref.degree() != 0) {
    throw std::invalid_argument("FixedSection::unit: |Psi0|_H = 1 needs the trivial bundle");
  }
  FixedSection out;
  out.degree = 0;
  out.weight = RField(b.grid());
  out.pair = CField(b.grid());
  for (std::size_t i = 0; i < out.weight.size(); ++i) {
    out.weight[i] = 1.0;
    out.pair[i] = std::sqrt(b.metric.H[i]);
  }
  out.zero_fraction = 0.0;
  return out;
}

FixedSection FixedSection::from_solution(const VortexSolution& sol) {
  FixedSection out;
  out.degree = sol.bundle.ref.degree();
  out.weight = sol.density();
  out.pair = CField(sol.bundle.grid());
  for (std::size_t i = 0; i < out.pair.size(); ++i) {
    out.pair[i] = std::conj(sol.psi.phi[i]) * sol.bundle.pair_weight[i];
  }
  out.zero_fraction = count_zero_fraction(out.weight);
  return out;
}

FixedSection FixedSection::theta_zeros(const Bundle& b, std::vector<cplx> zeros) {
  if (static_cast<int>(zeros.size()) != b.ref.degree()) {
    throw std::invalid_argument(
        "FixedSection::theta_zeros: zero count must match the bundle degree");
  }
  ReferenceBackground other(b.surf, b.ref.degree(), std::move(zeros));
  FixedSection out;
  out.degree = b.ref.degree();
  out.weight = other.abs_sigma_sq() * b.metric.H;
  out.pair = CField(b.grid());
  for (std::size_t i = 0; i < out.pair.size(); ++i) {
    out.pair[i] = b.metric.H[i] * b.ref.sigma()[i] * std::conj(other.sigma()[i]);
  }
  out.zero_fraction = count_zero_fraction(out.weight);
  return out;
}

double metric_g(const Bundle& b, const TangentVector& X, const TangentVector& Y) {
  cplx t1 = integrate_two_form(b.surf, wedge_one_one(hodge1(X.alpha), Y.alpha));
  return t1.real() + section_metric_term(b, X.beta, Y.beta, nullptr);
}

double omega(const Bundle& b, const TangentVector& X, const TangentVector& Y) {
  cplx t1 = integrate_two_form(b.surf, wedge_one_one(X.alpha, Y.alpha));
  return -t1.real() + section_omega_term(b, X.beta, Y.beta, nullptr);
}

double omega_psi0(const Bundle& b, const FixedSection& psi0, const TangentVector& X,
                  const TangentVector& Y) {
  require_same_grid(psi0.weight.grid, b.grid(), "omega_psi0");
  cplx t1 = integrate_two_form(b.surf, wedge_one_one(X.alpha, Y.alpha));
  return -t1.real() + section_omega_term(b, X.beta, Y.beta, &psi0.weight);
}

double metric_g_psi0(const Bundle& b, const FixedSection& psi0, const TangentVector& X,
                     const TangentVector& Y) {
  return omega_psi0(b, psi0, X, apply_complex_structure(Y));
}

double omega_psi0_diagonal(const Bundle& b, const FixedSection& psi0, const TangentVector& X) {
  double t1 = 0, t2 = 0;
  const Grid& g = b.grid();
  for (std::size_t i = 0; i < X.beta.size(); ++i) {
    t1 += std::norm(X.alpha.c10[i]);
    t2 += std::norm(X.beta[i]) * b.pair_weight[i] * psi0.weight[i] * b.surf.h_sq()[i];
  }
  return (-4.0 * t1 - 4.0 * t2) * g.dx() * g.dy();
}

TwoForm moment_map(const Bundle& b, const Connection& A, const Section& psi) {
  TwoForm F = curvature(b, A);
  RField dens = section_density(b, psi);
  for (std::size_t i = 0; i < F.c.size(); ++i) {
    F.c[i] -= (1.0 - dens[i]) * b.surf.h_sq()[i];
  }
  return F;
}

double hamiltonian(const Bundle& b, const Connection& A, const Section& psi, const CField& zeta) {
  require_same_grid(zeta.grid, b.grid(), "hamiltonian");
  TwoForm mu = moment_map(b, A, psi);
  for (std::size_t i = 0; i < mu.c.size(); ++i) mu.c[i] *= zeta[i];
  return integrate_two_form(b.surf, mu).real();
}

double tangent_norm(const Bundle& b, const TangentVector& X) {
  return std::sqrt(std::max(0.0, metric_g(b, X, X)));
}

TangentVector normalized(const Bundle& b, const TangentVector& X) {
  double n = tangent_norm(b, X);
  if (n == 0) throw std::invalid_argument("normalized: zero tangent");
  TangentVector out = tangent_scale(1.0 / n, X);
  out.gauge_projected = X.gauge_projected;
  out.projection_defect = X.projection_defect;
  out.mask_radius = X.mask_radius;
  out.linearization_warning = X.linearization_warning;
  return out;
}

}  // namespace vlab
