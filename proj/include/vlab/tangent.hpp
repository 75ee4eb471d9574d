#pragma once

#include <limits>

#include "vlab/solver.hpp"

namespace vlab {

/// Tangent direction (alpha, beta) on configuration space: alpha an
/// imaginary-valued one-form, beta a section deformation in the
/// sigma_ref trivialization.
///
/// Position-derivative tangents carry a simple pole of beta at each vortex
/// zero (the coefficient of a smooth section that does not vanish there);
/// mask_radius marks the disk around zeros that pointwise defect norms skip.
struct TangentVector {
  OneForm alpha;
  CField beta;
  /// dbar of beta, carried alongside the field. Constructors fill it through
  /// whatever representation is accurate for them: position tangents push the
  /// dbar through the reference ratio instead of differentiating the pole,
  /// which a grid transform of beta itself cannot do. Empty = derive
  /// spectrally from beta on demand.
  CField dbar_beta;
  bool gauge_projected = false;
  double projection_defect = std::numeric_limits<double>::quiet_NaN();
  double mask_radius = 0.0;
  bool linearization_warning = false;
};

/// Orbit direction of the gauge algebra element zeta (purely imaginary):
/// X_zeta = (d zeta, -zeta phi). Rejects zeta with a real part.
TangentVector gauge_vector_field(const VortexSolution& sol, const CField& zeta);

/// (alpha, beta) -> (*1 alpha, i beta).
TangentVector apply_complex_structure(const TangentVector& X);

/// Central difference of re-solved solutions at z_k +/- eps in direction
/// dir (0 = x, 1 = y), rebased to the trivialization of `base`. Raw: the
/// caller is expected to gauge_project the result.
TangentVector tangent_from_positions(const VortexSolution& base, int vortex_index, int dir,
                                     double eps, const SolveOptions& opts = {});

/// Removes the metric-orthogonal projection onto the gauge orbit: solves
/// (-lap + 4 |Psi|^2_H h^2) s = rhs for the optimal zeta = i s and returns
/// X - X_zeta. The recorded defect is the linear solve's relative residual.
TangentVector gauge_project(const VortexSolution& sol, const TangentVector& X);

/// Pushforward under g = e^{i chi}: (alpha, beta) -> (alpha, e^{-i chi} beta).
TangentVector gauge_pushforward(const Surface& s, const RField& chi, const TangentVector& X);

/// Max-norm defect of the linearized curvature equation
/// d alpha + 2 Re(beta conj(phi)) W h^2, skipping masked nodes.
double linearized_curvature_defect(const VortexSolution& sol, const TangentVector& X);

/// Weighted L2 defect of the linearized holomorphicity equation
/// dbar beta + a01 beta + alpha01 phi, skipping masked nodes.
double linearized_dbar_defect(const VortexSolution& sol, const TangentVector& X);

TangentVector tangent_add(const TangentVector& X, const TangentVector& Y);
TangentVector tangent_scale(double s, const TangentVector& X);

}  // namespace vlab
