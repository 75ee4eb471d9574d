#include "vlab/surface.hpp"

#include <cmath>

namespace vlab {

namespace {
RField constant_field(const Grid& g, double c) {
  RField f(g);
  for (auto& x : f.v) x = c;
  return f;
}
}  // namespace

Surface::Surface(const Grid& g, RField h) : g_(g), h_(std::move(h)) {
  require_same_grid(g_, h_.grid, "Surface");
  for (double x : h_.v) {
    if (!(x > 0)) throw std::invalid_argument("Surface: conformal factor must be positive");
  }
  h_sq_ = h_ * h_;
  area_ = 0;
  for (double x : h_sq_.v) area_ += x;
  area_ *= g_.dx() * g_.dy();
  spectral_ = std::make_shared<const Spectral>(g_);
  double hm = spectral_->high_mode_fraction(h_);
  if (hm > 1e-8) {
    throw std::invalid_argument("Surface: conformal factor is not smooth-periodic (high-mode energy fraction " +
                                std::to_string(hm) + ")");
  }
}

Surface::Surface(const Grid& g, double h_const) : Surface(g, constant_field(g, h_const)) {}

OneForm OneForm::imaginary(const CField& a) {
  OneForm p;
  p.c10 = a;
  p.c01 = CField(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) p.c01[i] = -std::conj(a[i]);
  p.imaginary_valued = true;
  return p;
}

OneForm OneForm::general(const CField& c10, const CField& c01) {
  require_same_grid(c10.grid, c01.grid, "OneForm");
  OneForm p;
  p.c10 = c10;
  p.c01 = c01;
  double defect = 0;
  for (std::size_t i = 0; i < c10.size(); ++i) {
    defect = std::max(defect, std::abs(std::conj(c01[i]) + c10[i]));
  }
  double scale = std::max(max_abs(c10), max_abs(c01));
  p.imaginary_valued = defect <= 1e-12 * std::max(1.0, scale);
  return p;
}

double OneForm::imaginary_defect() const {
  double defect = 0;
  for (std::size_t i = 0; i < c10.size(); ++i) {
    defect = std::max(defect, std::abs(std::conj(c01[i]) + c10[i]));
  }
  return defect;
}

cplx integrate_two_form(const Surface& s, const TwoForm& w) {
  require_same_grid(s.grid(), w.grid(), "integrate_two_form");
  cplx sum = 0;
  for (const cplx& f : w.c.v) sum += f;
  // dz ^ dzbar = -2i dx ^ dy
  return sum * cplx(0, -2.0) * s.grid().dx() * s.grid().dy();
}

TwoForm wedge_one_one(const OneForm& p, const OneForm& q) {
  require_same_grid(p.grid(), q.grid(), "wedge_one_one");
  TwoForm w;
  w.c = CField(p.grid());
  for (std::size_t i = 0; i < w.c.size(); ++i) {
    w.c[i] = p.c10[i] * q.c01[i] - p.c01[i] * q.c10[i];
  }
  return w;
}

OneForm hodge1(const OneForm& p) {
  OneForm out;
  out.c10 = cplx(0, -1) * p.c10;
  out.c01 = cplx(0, 1) * p.c01;
  out.imaginary_valued = p.imaginary_valued;
  return out;
}

OneForm hodge2(const OneForm& p) {
  OneForm out;
  out.c10 = CField(p.grid());
  out.c01 = CField(p.grid());
  for (std::size_t i = 0; i < p.c10.size(); ++i) {
    out.c01[i] = -std::conj(p.c10[i]);
    out.c10[i] = std::conj(p.c01[i]);
  }
  out.imaginary_valued = p.imaginary_valued;
  return out;
}

OneForm d_zero_form(const Surface& s, const CField& f) {
  require_same_grid(s.grid(), f.grid, "d_zero_form");
  const Spectral& sp = s.spectral();
  OneForm out;
  out.c10 = sp.deriv_z(f);
  out.c01 = sp.deriv_zbar(f);
  out.imaginary_valued = max_abs_real(f) <= 1e-12 * std::max(1.0, max_abs(f));
  return out;
}

TwoForm d_one_form(const Surface& s, const OneForm& p) {
  require_same_grid(s.grid(), p.grid(), "d_one_form");
  const Spectral& sp = s.spectral();
  CField a = sp.deriv_z(p.c01), b = sp.deriv_zbar(p.c10);
  TwoForm w;
  w.c = a - b;
  return w;
}

TwoForm volume_form(const Surface& s) {
  TwoForm w;
  w.c = to_complex(s.h_sq());
  return w;
}

}  // namespace vlab
