#include "vlab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace vlab {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

struct Spectral::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

Spectral::Spectral(const Grid& g) : g_(g), plans_(std::make_unique<Plans>()) {
  if (g.nx < 2 || g.ny < 2 || g.Lx <= 0 || g.Ly <= 0) {
    throw std::invalid_argument("Spectral: degenerate grid");
  }
  std::vector<cplx> a(g.size()), b(g.size());
  std::scoped_lock lk(plan_mutex());
  // FFTW_UNALIGNED lets the same plan run on any caller buffer.
  plans_->fwd = fftw_plan_dft_2d(g.ny, g.nx, as_fftw(a.data()), as_fftw(b.data()),
                                 FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->bwd = fftw_plan_dft_2d(g.ny, g.nx, as_fftw(a.data()), as_fftw(b.data()),
                                 FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Spectral::~Spectral() {
  std::scoped_lock lk(plan_mutex());
  if (plans_->fwd) fftw_destroy_plan(plans_->fwd);
  if (plans_->bwd) fftw_destroy_plan(plans_->bwd);
}

double Spectral::kx(int m) const {
  int s = (m <= g_.nx / 2) ? m : m - g_.nx;
  return 2.0 * std::numbers::pi * s / g_.Lx;
}

double Spectral::ky(int m) const {
  int s = (m <= g_.ny / 2) ? m : m - g_.ny;
  return 2.0 * std::numbers::pi * s / g_.Ly;
}

CField Spectral::forward(const CField& f) const {
  require_same_grid(f.grid, g_, "fft forward");
  CField in = f, out(g_);
  fftw_execute_dft(plans_->fwd, as_fftw(in.v.data()), as_fftw(out.v.data()));
  return out;
}

CField Spectral::backward(const CField& f) const {
  require_same_grid(f.grid, g_, "fft backward");
  CField in = f, out(g_);
  fftw_execute_dft(plans_->bwd, as_fftw(in.v.data()), as_fftw(out.v.data()));
  double scale = 1.0 / static_cast<double>(g_.size());
  for (auto& x : out.v) x *= scale;
  return out;
}

// which: 0 -> d/dx, 1 -> d/dy, 2 -> dz, 3 -> dzbar, 4 -> laplacian
CField Spectral::apply_multiplier(const CField& f, int which) const {
  CField hat = forward(f);
  const bool even_x = g_.nx % 2 == 0, even_y = g_.ny % 2 == 0;
  for (int iy = 0; iy < g_.ny; ++iy) {
    const bool ny_nyq = even_y && iy == g_.ny / 2;
    const double kyv = ky(iy);
    for (int ix = 0; ix < g_.nx; ++ix) {
      const bool nx_nyq = even_x && ix == g_.nx / 2;
      const double kxv = kx(ix);
      cplx m;
      switch (which) {
        case 0: m = cplx(0, nx_nyq ? 0.0 : kxv); break;
        case 1: m = cplx(0, ny_nyq ? 0.0 : kyv); break;
        case 2:  // (d/dx - i d/dy)/2
          m = 0.5 * cplx(ny_nyq ? 0.0 : kyv, nx_nyq ? 0.0 : kxv);
          break;
        case 3:  // (d/dx + i d/dy)/2
          m = 0.5 * cplx(ny_nyq ? 0.0 : -kyv, nx_nyq ? 0.0 : kxv);
          break;
        default: m = -(kxv * kxv + kyv * kyv); break;
      }
      hat.at(ix, iy) *= m;
    }
  }
  return backward(hat);
}

CField Spectral::deriv_x(const CField& f) const { return apply_multiplier(f, 0); }
CField Spectral::deriv_y(const CField& f) const { return apply_multiplier(f, 1); }
CField Spectral::deriv_z(const CField& f) const { return apply_multiplier(f, 2); }
CField Spectral::deriv_zbar(const CField& f) const { return apply_multiplier(f, 3); }
CField Spectral::laplacian(const CField& f) const { return apply_multiplier(f, 4); }

RField Spectral::laplacian(const RField& f) const { return real_part(laplacian(to_complex(f))); }

CField Spectral::solve_helmholtz(const CField& rhs, double mass) const {
  if (mass <= 0) throw std::invalid_argument("solve_helmholtz: mass must be positive");
  CField hat = forward(rhs);
  for (int iy = 0; iy < g_.ny; ++iy) {
    for (int ix = 0; ix < g_.nx; ++ix) {
      double k2 = kx(ix) * kx(ix) + ky(iy) * ky(iy);
      hat.at(ix, iy) /= -(k2 + mass);
    }
  }
  return backward(hat);
}

RField Spectral::solve_helmholtz(const RField& rhs, double mass) const {
  return real_part(solve_helmholtz(to_complex(rhs), mass));
}

CField Spectral::shift(const CField& f, double sx, double sy) const {
  CField hat = forward(f);
  for (int iy = 0; iy < g_.ny; ++iy) {
    for (int ix = 0; ix < g_.nx; ++ix) {
      double phase = -(kx(ix) * sx + ky(iy) * sy);
      hat.at(ix, iy) *= cplx(std::cos(phase), std::sin(phase));
    }
  }
  return backward(hat);
}

RField Spectral::shift(const RField& f, double sx, double sy) const {
  return real_part(shift(to_complex(f), sx, sy));
}

double Spectral::high_mode_fraction(const RField& f) const {
  CField hat = forward(to_complex(f));
  double total = 0, high = 0;
  const double mx = g_.nx / 2.0, my = g_.ny / 2.0;
  for (int iy = 0; iy < g_.ny; ++iy) {
    int sy = (iy <= g_.ny / 2) ? iy : iy - g_.ny;
    for (int ix = 0; ix < g_.nx; ++ix) {
      int sx = (ix <= g_.nx / 2) ? ix : ix - g_.nx;
      if (sx == 0 && sy == 0) continue;  // mean excluded
      double e = std::norm(hat.at(ix, iy));
      total += e;
      if (std::abs(sx) >= 0.9 * mx || std::abs(sy) >= 0.9 * my) high += e;
    }
  }
  return total > 0 ? high / total : 0.0;
}

RField solve_spd_schroedinger(const Spectral& sp, const RField& q, const RField& b,
                              double tol, int max_iter, int* iters_out) {
  require_same_grid(q.grid, b.grid, "spd solve");
  double qmax = 0;
  for (double x : q.v) {
    if (x < -1e-14) throw std::invalid_argument("spd solve: q must be nonnegative");
    qmax = std::max(qmax, x);
  }
  if (qmax <= 0) throw std::invalid_argument("spd solve: q vanishes identically");

  auto apply = [&](const RField& u) {
    RField out = sp.laplacian(u);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -out[i] + q[i] * u[i];
    return out;
  };
  auto precond = [&](const RField& r) {
    // (-lap + qmax)^{-1}
    RField out = sp.solve_helmholtz(r, qmax);
    for (auto& x : out.v) x = -x;
    return out;
  };
  auto dot = [](const RField& a, const RField& c) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * c[i];
    return s;
  };

  RField u(b.grid, 0.0), r = b;
  double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0) {
    if (iters_out) *iters_out = 0;
    return u;
  }
  RField z = precond(r), p = z;
  double rz = dot(r, z);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::sqrt(dot(r, r)) <= tol * bnorm) break;
    RField Ap = apply(p);
    double alpha = rz / dot(p, Ap);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    z = precond(r);
    double rz_new = dot(r, z);
    double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
  }
  if (iters_out) *iters_out = it;
  return u;
}

}  // namespace vlab
