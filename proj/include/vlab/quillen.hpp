#pragma once

#include "vlab/forms.hpp"

namespace vlab {

/// (0,1)-form c dzbar.
struct ZeroOneForm {
  CField c;
  const Grid& grid() const { return c.grid; }
};

/// theta = h dz and thetabar = h dzbar; theta ^ thetabar = omega.
struct ThetaForms {
  OneForm theta;
  OneForm theta_bar;
};
ThetaForms theta_forms(const Surface& s);

/// Kahler form on (0,1)-connection parts: F(p,q) = Re int p ^ *2 q.
/// The Quillen curvature of the determinant bundle is (i/pi) times this;
/// the prefactor is carried symbolically by callers.
double kahler_form_f(const Surface& s, const ZeroOneForm& p, const ZeroOneForm& q);

/// Same value through the full wedge of imaginary-valued completions:
/// -1/2 int alpha1 ^ alpha2.
double kahler_form_f_wedge(const Surface& s, const ZeroOneForm& p, const ZeroOneForm& q);

/// Connection shift B^{(0,1)} = Psi H conj(Psi0) thetabar, as the periodic
/// coefficient phi * pair * h. Gauge invariant. Degrees must match.
ZeroOneForm b_form(const Bundle& b, const Section& psi, const FixedSection& psi0);

/// Curvature bracket of the shifted operators dbar + A01 +/- B01 without the
/// (i/pi) prefactor:
///   Re int (alpha1_01 +/- beta H conj(Psi0) thetabar) ^ *2 (alpha2_01 +/- eta H conj(Psi0) thetabar).
double quillen_pm(const Bundle& b, const FixedSection& psi0, const TangentVector& X,
                  const TangentVector& Y, int sign);

/// Checks quillen_pm(+) + quillen_pm(-) = Omega_psi0(X,Y).
VerificationReport verify_prequantum_identity(const Bundle& b, const FixedSection& psi0,
                                              const TangentVector& X, const TangentVector& Y);

}  // namespace vlab
