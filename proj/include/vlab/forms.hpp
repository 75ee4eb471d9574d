#pragma once

#include <string>
#include <vector>

#include "vlab/tangent.hpp"

namespace vlab {

/// Fixed weighting section Psi0 for the rescaled symplectic family.
/// Stored through two periodic fields: the scalar weight |Psi0|^2_H and the
/// pairing field H sigma_ref conj(Psi0), which multiplies trivialized
/// section coefficients to form the smooth function beta H conj(Psi0).
struct FixedSection {
  int degree = 0;
  RField weight;       // |Psi0|^2_H
  CField pair;         // H sigma_ref conj(Psi0)
  double zero_fraction = 0;  // grid fraction where the weight nearly vanishes

  /// |Psi0|_H = 1 on the trivial bundle.
  static FixedSection unit(const Bundle& b);
  static FixedSection from_solution(const VortexSolution& sol);
  /// Theta-product section with prescribed zeros on the same bundle.
  static FixedSection theta_zeros(const Bundle& b, std::vector<cplx> zeros);
};

/// The L2 metric on configuration space:
///   G(X,Y) = int *1 alpha1 ^ alpha2 + 2i int Re<beta,eta>_H omega.
double metric_g(const Bundle& b, const TangentVector& X, const TangentVector& Y);

/// The compatible symplectic form:
///   Omega(X,Y) = -int alpha1 ^ alpha2 - int (beta H conj(eta) - conj(beta) H eta) omega.
double omega(const Bundle& b, const TangentVector& X, const TangentVector& Y);

/// Omega with the section term conformally rescaled by |Psi0|^2_H.
double omega_psi0(const Bundle& b, const FixedSection& psi0, const TangentVector& X,
                  const TangentVector& Y);

/// G_psi0(X,Y) = Omega_psi0(X, I Y); a metric, positive for nonzero tangents.
double metric_g_psi0(const Bundle& b, const FixedSection& psi0, const TangentVector& X,
                     const TangentVector& Y);

/// Independent closed-form route for Omega_psi0(I X, X):
///   -4 int |a|^2 dx dy - 4 int |beta|^2_H |Psi0|^2_H h^2 dx dy.
double omega_psi0_diagonal(const Bundle& b, const FixedSection& psi0, const TangentVector& X);

/// mu(A, Psi) = F(A) - (1 - |Psi|^2_H) omega; vanishes on vortex solutions.
TwoForm moment_map(const Bundle& b, const Connection& A, const Section& psi);

/// H_zeta(p) = int zeta . mu(p); real for purely imaginary zeta.
double hamiltonian(const Bundle& b, const Connection& A, const Section& psi, const CField& zeta);

double tangent_norm(const Bundle& b, const TangentVector& X);
TangentVector normalized(const Bundle& b, const TangentVector& X);

struct VerificationReport {
  std::string name;
  double defect = 0;
  double tolerance = 0;
  bool pass = false;
  std::string context;
};

}  // namespace vlab
