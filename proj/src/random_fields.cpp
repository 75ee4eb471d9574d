#include "vlab/random_fields.hpp"

#include <cmath>
#include <numbers>

namespace vlab {

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0;
  while (u1 == 0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

CField random_complex_field(const Surface& s, Rng& rng, int kcut) {
  const Grid& g = s.grid();
  kcut = std::min({kcut, g.nx / 2 - 1, g.ny / 2 - 1});
  CField hat(g);
  for (int my = -kcut; my <= kcut; ++my) {
    for (int mx = -kcut; mx <= kcut; ++mx) {
      int ix = (mx + g.nx) % g.nx, iy = (my + g.ny) % g.ny;
      hat.at(ix, iy) = cplx(rng.gauss(), rng.gauss());
    }
  }
  CField f = s.spectral().backward(hat);
  double rms = 0;
  for (const cplx& x : f.v) rms += std::norm(x);
  rms = std::sqrt(rms / static_cast<double>(f.size()));
  if (rms > 0) f = cplx(1.0 / rms, 0) * f;
  return f;
}

RField random_real_field(const Surface& s, Rng& rng, int kcut) {
  CField f = random_complex_field(s, rng, kcut);
  RField out = real_part(f);
  double rms = 0;
  for (double x : out.v) rms += x * x;
  rms = std::sqrt(rms / static_cast<double>(out.size()));
  if (rms > 0) out = (1.0 / rms) * out;
  return out;
}

CField random_imaginary_field(const Surface& s, Rng& rng, int kcut) {
  RField r = random_real_field(s, rng, kcut);
  CField out(r.grid);
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = cplx(0, r[i]);
  return out;
}

TangentVector random_tangent(const Bundle& b, Rng& rng, int kcut) {
  TangentVector X;
  X.alpha = OneForm::imaginary(random_complex_field(b.surf, rng, kcut));
  X.beta = random_complex_field(b.surf, rng, kcut);
  X.dbar_beta = b.surf.spectral().deriv_zbar(X.beta);
  return X;
}

}  // namespace vlab
