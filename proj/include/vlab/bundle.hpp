#pragma once

#include <vector>

#include "vlab/surface.hpp"

namespace vlab {

struct HermitianMetric {
  RField H;
  explicit HermitianMetric(RField f);
  static HermitianMetric constant(const Grid& g, double c = 1.0);
};

/// Fixed degree-N background on the torus: a theta-function product
/// sigma_ref with prescribed zeros and the unitary reference connection
/// A_ref that makes sigma_ref covariantly holomorphic.
///
/// sigma_ref(z) = exp(-pi N y^2/(Lx Ly)) exp(-2 pi i y S/(Lx Ly))
///                  prod_k theta1(pi (z - z_k)/Lx | i Ly/Lx),   S = sum z_k.
///
/// The boundary cocycle of this family depends only on N, so ratios of
/// references with equal degree are strictly periodic. |sigma_ref| is
/// periodic; A_ref itself is not, and never appears on the grid — only its
/// constant curvature coefficient and the pointwise closed form below do.
class ReferenceBackground {
 public:
  ReferenceBackground(const Surface& s, int degree, std::vector<cplx> zeros);

  int degree() const { return degree_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  cplx zero_sum() const { return zero_sum_; }
  const CField& sigma() const { return sigma_; }
  const RField& abs_sigma_sq() const { return abs_sigma_sq_; }

  /// F(A_ref) = c dz ^ dzbar with c = pi N/(Lx Ly); integrates to -2 pi i N.
  double curvature_coeff() const { return curvature_coeff_; }

  cplx sigma_at(cplx z) const;    // off-grid evaluation
  cplx a01_ref_at(cplx z) const;  // (0,1) coefficient of A_ref
  cplx a10_ref_at(cplx z) const;  // = -conj(a01)

 private:
  Grid g_;
  int degree_;
  std::vector<cplx> zeros_;
  cplx zero_sum_;
  double nome_;  // q = exp(-pi Ly/Lx)
  CField sigma_;
  RField abs_sigma_sq_;
  double curvature_coeff_;
};

/// Jacobi theta_1(u | tau) for tau = i Ly/Lx passed as the nome q = e^{i pi tau}.
cplx jacobi_theta1(cplx u, double q);

/// Everything needed to trivialize degree-N bundle data as periodic fields.
struct Bundle {
  Surface surf;
  HermitianMetric metric;
  ReferenceBackground ref;
  RField pair_weight;  // |sigma_ref|^2 H: Hermitian pairing weight for coefficients

  Bundle(Surface s, HermitianMetric H, ReferenceBackground r);
  const Grid& grid() const { return surf.grid(); }
};

/// Periodic part of a unitary connection A = A_ref + a.
struct Connection {
  OneForm a;
  static Connection zero(const Grid& g);
};

/// Section coefficient against sigma_ref: the physical section is phi * sigma_ref.
struct Section {
  CField phi;
};

TwoForm curvature(const Bundle& b, const Connection& A);

/// Trivialized Cauchy-Riemann operator: dbar phi + a01 phi. Vanishes exactly
/// on covariantly holomorphic sections; A_ref cancels against sigma_ref.
CField dbar(const Bundle& b, const Connection& A, const Section& psi);

/// g = e^{i chi}: A -> A + i d chi, psi -> e^{-i chi} psi.
void gauge_transform(const Bundle& b, const RField& chi, Connection& A, Section& psi);

/// |psi|^2_H = |phi|^2 |sigma_ref|^2 H as a grid field.
RField section_density(const Bundle& b, const Section& psi);

}  // namespace vlab
