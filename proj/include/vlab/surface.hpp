#pragma once

#include <memory>

#include "vlab/fft.hpp"
#include "vlab/field.hpp"

namespace vlab {

/// Flat torus C/(Lx Z + i Ly Z) carrying a smooth positive conformal factor h.
/// The volume form is omega = h^2 dz ^ dzbar = -2i h^2 dx ^ dy.
class Surface {
 public:
  Surface(const Grid& g, RField h);
  Surface(const Grid& g, double h_const);

  const Grid& grid() const { return g_; }
  const RField& h() const { return h_; }
  const RField& h_sq() const { return h_sq_; }
  double area() const { return area_; }  // integral of h^2 dx dy

  const Spectral& spectral() const { return *spectral_; }

 private:
  Grid g_;
  RField h_, h_sq_;
  double area_;
  std::shared_ptr<const Spectral> spectral_;
};

/// One-form a10 dz + a01 dzbar. Imaginary-valued forms satisfy
/// conj(a01) = -a10 and are usually written a dz - conj(a) dzbar.
struct OneForm {
  CField c10, c01;
  bool imaginary_valued = false;

  static OneForm imaginary(const CField& a);
  static OneForm general(const CField& c10, const CField& c01);

  const Grid& grid() const { return c10.grid; }
  /// Max-norm violation of conj(c01) + c10 = 0.
  double imaginary_defect() const;
};

/// Two-form f dz ^ dzbar; purely imaginary as a form iff f is real.
struct TwoForm {
  CField c;
  const Grid& grid() const { return c.grid; }
  double imaginary_form_defect() const { return max_abs_imag(c); }
};

cplx integrate_two_form(const Surface& s, const TwoForm& w);
TwoForm wedge_one_one(const OneForm& p, const OneForm& q);
OneForm hodge1(const OneForm& p);  // *(eta dz) = -i eta dz, *(eta dzbar) = +i eta dzbar
OneForm hodge2(const OneForm& p);  // *(eta dz) = -conj(eta) dzbar and back
OneForm d_zero_form(const Surface& s, const CField& f);
TwoForm d_one_form(const Surface& s, const OneForm& p);
TwoForm volume_form(const Surface& s);

}  // namespace vlab
