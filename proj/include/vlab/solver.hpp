#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "vlab/bundle.hpp"

namespace vlab {

/// Area obstruction: degree-N solutions need area > pi N.
class BradlowBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverConvergenceError : public std::runtime_error {
 public:
  SolverConvergenceError(const std::string& msg, double last_residual)
      : std::runtime_error(msg), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

struct SolveOptions {
  int max_iter = 60;
  double tol = 1e-10;         // max-norm target for the curvature equation defect
  double accept_tol = 2.5e-9; // stalled Newton is still accepted below this
  bool continuation = true;   // area staircase fallback near the Bradlow bound
  int pcg_max_iter = 800;
  double pcg_tol = 1e-12;
};

/// A solved vortex pair (A, Psi) of prescribed degree and zero positions,
/// stored through the scalar reduction: Psi = e^{v/2} sigma_ref and
/// A = A_ref + (dv/2) dz - (dbar v/2) dzbar, with v the smooth periodic
/// solution of  lap v = 4 h^2 (W e^v - 1) + 4 pi N/(Lx Ly),  W = |sigma_ref|^2 H.
struct VortexSolution {
  Bundle bundle;
  std::vector<cplx> positions;
  RField v;  // log |phi|^2
  Connection A;
  Section psi;
  double residual1 = 0;  // max-norm defect of F(A) = (1 - |Psi|^2_H) omega
  double residual2 = 0;  // L2 norm of the covariant dbar of Psi
  int newton_iterations = 0;

  RField density() const;           // |Psi|^2_H
  double bradlow_integral() const;  // integral of |Psi|^2_H h^2 dx dy
  /// | (area - bradlow_integral) - pi N | / (pi N), the integrated form of
  /// the curvature equation (absolute value for N = 0).
  double integral_identity_defect() const;
};

VortexSolution solve_vortices(const Surface& s, const HermitianMetric& H, int degree,
                              std::vector<cplx> positions, const SolveOptions& opts = {});

/// Residuals of an arbitrary configuration against the vortex equations.
std::pair<double, double> vortex_residuals(const Bundle& b, const Connection& A,
                                           const Section& psi);

}  // namespace vlab
