#pragma once

#include <memory>

#include "vlab/field.hpp"

namespace vlab {

/// FFT-backed periodic calculus on a fixed grid.
///
/// Derivatives use the convention z = x + iy, dz = (dx - i dy)/2 acting as
/// deriv_z = (d/dx - i d/dy)/2 and deriv_zbar = (d/dx + i d/dy)/2.
/// Nyquist modes are dropped from first derivatives on even grids.
class Spectral {
 public:
  explicit Spectral(const Grid& g);
  ~Spectral();
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const Grid& grid() const { return g_; }

  CField forward(const CField& f) const;   // unnormalized
  CField backward(const CField& f) const;  // includes 1/(nx*ny)

  CField deriv_x(const CField& f) const;
  CField deriv_y(const CField& f) const;
  CField deriv_z(const CField& f) const;
  CField deriv_zbar(const CField& f) const;
  CField laplacian(const CField& f) const;
  RField laplacian(const RField& f) const;

  /// Solves (laplacian - mass) u = rhs with mass > 0.
  CField solve_helmholtz(const CField& rhs, double mass) const;
  RField solve_helmholtz(const RField& rhs, double mass) const;

  /// Samples of f translated by (sx, sy): result(x,y) = f(x-sx, y-sy).
  CField shift(const CField& f, double sx, double sy) const;
  RField shift(const RField& f, double sx, double sy) const;

  /// Fraction of spectral energy in the top decade of modes; a smooth
  /// well-resolved field gives a tiny value.
  double high_mode_fraction(const RField& f) const;

  double kx(int m) const;  // signed wavenumber 2*pi*m'/Lx
  double ky(int m) const;

 private:
  struct Plans;
  CField apply_multiplier(const CField& f, int which) const;

  Grid g_;
  std::unique_ptr<Plans> plans_;
};

/// Conjugate-gradient solve of (-laplacian + q) u = b with q >= 0, q != 0.
/// Preconditioned by the constant-coefficient inverse; tol is relative.
RField solve_spd_schroedinger(const Spectral& sp, const RField& q, const RField& b,
                              double tol, int max_iter, int* iters_out = nullptr);

}  // namespace vlab
