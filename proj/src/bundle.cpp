#include "vlab/bundle.hpp"

#include <cmath>
#include <numbers>

namespace vlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

HermitianMetric::HermitianMetric(RField f) : H(std::move(f)) {
  for (double x : H.v) {
    if (!(x > 0)) throw std::invalid_argument("HermitianMetric: H must be positive");
  }
}

HermitianMetric HermitianMetric::constant(const Grid& g, double c) {
  RField f(g);
  for (auto& x : f.v) x = c;
  return HermitianMetric(std::move(f));
}

cplx jacobi_theta1(cplx u, double q) {
  // theta1(u) = 2 sum_{k>=0} (-1)^k q^{(k+1/2)^2} sin((2k+1)u)
  cplx sum = 0;
  double scale = 0;
  for (int k = 0; k < 64; ++k) {
    double e = (k + 0.5) * (k + 0.5);
    double coeff = std::pow(q, e);
    cplx term = 2.0 * coeff * std::sin(double(2 * k + 1) * u);
    if (k % 2 == 1) term = -term;
    sum += term;
    scale = std::max(scale, std::abs(term));
    if (std::abs(term) < 1e-18 * std::max(scale, 1e-300) && k > 2) break;
  }
  return sum;
}

ReferenceBackground::ReferenceBackground(const Surface& s, int degree, std::vector<cplx> zeros)
    : g_(s.grid()), degree_(degree), zeros_(std::move(zeros)) {
  if (degree < 0) throw std::invalid_argument("ReferenceBackground: degree must be >= 0");
  if (static_cast<int>(zeros_.size()) != degree) {
    throw std::invalid_argument("ReferenceBackground: need exactly one zero per unit of degree");
  }
  zero_sum_ = 0;
  for (cplx z : zeros_) zero_sum_ += z;
  nome_ = std::exp(-kPi * g_.Ly / g_.Lx);
  curvature_coeff_ = kPi * degree_ / (g_.Lx * g_.Ly);

  sigma_ = CField(g_);
  abs_sigma_sq_ = RField(g_);
  for (int iy = 0; iy < g_.ny; ++iy) {
    for (int ix = 0; ix < g_.nx; ++ix) {
      cplx v = sigma_at(g_.z(ix, iy));
      sigma_.at(ix, iy) = v;
      abs_sigma_sq_.at(ix, iy) = std::norm(v);
    }
  }
}

cplx ReferenceBackground::sigma_at(cplx z) const {
  const double y = z.imag();
  const double LL = g_.Lx * g_.Ly;
  cplx log_comp = -kPi * degree_ * y * y / LL - cplx(0, 2 * kPi) * y * zero_sum_ / LL;
  cplx prod = std::exp(log_comp);
  for (cplx zk : zeros_) {
    prod *= jacobi_theta1(kPi * (z - zk) / g_.Lx, nome_);
  }
  return prod;
}

cplx ReferenceBackground::a01_ref_at(cplx z) const {
  const double LL = g_.Lx * g_.Ly;
  return cplx(0, kPi * degree_ * z.imag() / LL) - kPi * zero_sum_ / LL;
}

cplx ReferenceBackground::a10_ref_at(cplx z) const { return -std::conj(a01_ref_at(z)); }

Bundle::Bundle(Surface s, HermitianMetric H, ReferenceBackground r)
    : surf(std::move(s)), metric(std::move(H)), ref(std::move(r)) {
  require_same_grid(surf.grid(), metric.H.grid, "Bundle");
  pair_weight = ref.abs_sigma_sq() * metric.H;
}

Connection Connection::zero(const Grid& g) {
  Connection A;
  A.a = OneForm::imaginary(CField(g));
  return A;
}

TwoForm curvature(const Bundle& b, const Connection& A) {
  TwoForm da = d_one_form(b.surf, A.a);
  for (auto& x : da.c.v) x += b.ref.curvature_coeff();
  return da;
}

CField dbar(const Bundle& b, const Connection& A, const Section& psi) {
  require_same_grid(psi.phi.grid, b.grid(), "dbar");
  CField out = b.surf.spectral().deriv_zbar(psi.phi);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += A.a.c01[i] * psi.phi[i];
  return out;
}

void gauge_transform(const Bundle& b, const RField& chi, Connection& A, Section& psi) {
  require_same_grid(chi.grid, b.grid(), "gauge_transform");
  const Spectral& sp = b.surf.spectral();
  CField chic = to_complex(chi);
  CField dchi_z = sp.deriv_z(chic), dchi_zbar = sp.deriv_zbar(chic);
  for (std::size_t i = 0; i < chi.size(); ++i) {
    A.a.c10[i] += cplx(0, 1) * dchi_z[i];
    A.a.c01[i] += cplx(0, 1) * dchi_zbar[i];
    psi.phi[i] *= std::exp(cplx(0, -chi[i]));
  }
}

RField section_density(const Bundle& b, const Section& psi) {
  RField out(b.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(psi.phi[i]) * b.pair_weight[i];
  return out;
}

}  // namespace vlab
