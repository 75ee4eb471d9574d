#include "vlab/quillen.hpp"

#include <cmath>

namespace vlab {

ThetaForms theta_forms(const Surface& s) {
  CField h = to_complex(s.h()), zero(s.grid());
  ThetaForms out;
  out.theta = OneForm::general(h, zero);
  out.theta_bar = OneForm::general(zero, h);
  return out;
}

double kahler_form_f(const Surface& s, const ZeroOneForm& p, const ZeroOneForm& q) {
  require_same_grid(p.grid(), q.grid(), "kahler_form_f");
  CField zero(p.grid());
  OneForm pf = OneForm::general(zero, p.c);
  OneForm qf = OneForm::general(zero, q.c);
  return integrate_two_form(s, wedge_one_one(pf, hodge2(qf))).real();
}

double kahler_form_f_wedge(const Surface& s, const ZeroOneForm& p, const ZeroOneForm& q) {
  require_same_grid(p.grid(), q.grid(), "kahler_form_f_wedge");
  // imaginary-valued completion of c dzbar is -conj(c) dz + c dzbar
  auto complete = [](const ZeroOneForm& f) {
    CField a(f.grid());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = -std::conj(f.c[i]);
    return OneForm::imaginary(a);
  };
  cplx val = integrate_two_form(s, wedge_one_one(complete(p), complete(q)));
  return -0.5 * val.real();
}

ZeroOneForm b_form(const Bundle& b, const Section& psi, const FixedSection& psi0) {
  require_same_grid(psi.phi.grid, b.grid(), "b_form");
  if (psi0.degree != b.ref.degree()) {
    throw std::invalid_argument("b_form: Psi and Psi0 degrees differ; the product is not periodic");
  }
  ZeroOneForm out;
  out.c = CField(b.grid());
  for (std::size_t i = 0; i < out.c.size(); ++i) {
    out.c[i] = psi.phi[i] * psi0.pair[i] * b.surf.h()[i];
  }
  return out;
}

double quillen_pm(const Bundle& b, const FixedSection& psi0, const TangentVector& X,
                  const TangentVector& Y, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("quillen_pm: sign must be +1 or -1");
  if (psi0.degree != b.ref.degree()) {
    throw std::invalid_argument("quillen_pm: Psi0 degree does not match the bundle");
  }
  const double s = sign;
  ZeroOneForm p, q;
  p.c = CField(b.grid());
  q.c = CField(b.grid());
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    cplx shift_x = X.beta[i] * psi0.pair[i] * b.surf.h()[i];
    cplx shift_y = Y.beta[i] * psi0.pair[i] * b.surf.h()[i];
    p.c[i] = X.alpha.c01[i] + s * shift_x;
    q.c[i] = Y.alpha.c01[i] + s * shift_y;
  }
  return kahler_form_f(b.surf, p, q);
}

VerificationReport verify_prequantum_identity(const Bundle& b, const FixedSection& psi0,
                                              const TangentVector& X, const TangentVector& Y) {
  double sum = quillen_pm(b, psi0, X, Y, +1) + quillen_pm(b, psi0, X, Y, -1);
  double target = omega_psi0(b, psi0, X, Y);
  VerificationReport report;
  report.name = "prequantum-curvature-identity";
  report.defect = std::abs(sum - target) / (1.0 + std::abs(target));
  report.tolerance = 1e-10;
  report.pass = report.defect <= report.tolerance;
  report.context = "sum of shifted Quillen curvatures vs rescaled symplectic form";
  return report;
}

}  // namespace vlab
