#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vlab/random_fields.hpp"
#include "vlab/surface.hpp"

using namespace vlab;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

Surface unit_torus(int n = 64) { return Surface(Grid{n, n, kTwoPi, kTwoPi}, 1.0); }

CField sampled(const Grid& g, auto f) {
  CField out(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) out.at(ix, iy) = f(g.x(ix), g.y(iy));
  }
  return out;
}

// centered-difference x/y derivatives on the periodic grid
CField fd_x(const CField& f) {
  const Grid& g = f.grid;
  CField out(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      out.at(ix, iy) =
          (f.at((ix + 1) % g.nx, iy) - f.at((ix + g.nx - 1) % g.nx, iy)) / (2 * g.dx());
    }
  }
  return out;
}

CField fd_y(const CField& f) {
  const Grid& g = f.grid;
  CField out(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      out.at(ix, iy) =
          (f.at(ix, (iy + 1) % g.ny) - f.at(ix, (iy + g.ny - 1) % g.ny)) / (2 * g.dy());
    }
  }
  return out;
}

}  // namespace

TEST_CASE("integrate_two_form: constant integrand on the unit torus") {
  Surface s = unit_torus();
  cplx val = integrate_two_form(s, volume_form(s));
  CHECK(std::abs(val - cplx(0, -2 * 4 * kPi * kPi)) < 1e-12 * 8 * kPi * kPi);
}

TEST_CASE("integrate_two_form: mean-zero mode integrates to zero") {
  Surface s = unit_torus();
  TwoForm w{sampled(s.grid(), [](double x, double) { return std::cos(x); })};
  CHECK(std::abs(integrate_two_form(s, w)) < 1e-12);
}

TEST_CASE("integrate_two_form: band-limited integrand matches the brute-force Riemann oracle") {
  Surface s = unit_torus(64);
  auto f = [](double x, double y) { return 1.0 + 0.5 * std::cos(x) * std::cos(y); };
  TwoForm w{sampled(s.grid(), f)};
  cplx val = integrate_two_form(s, w);
  // only the mean survives
  CHECK(std::abs(val - cplx(0, -2 * 4 * kPi * kPi)) < 1e-12 * 8 * kPi * kPi);
  // independent high-resolution Riemann sum
  cplx oracle = 0;
  const int M = 512;
  for (int j = 0; j < M; ++j) {
    for (int i = 0; i < M; ++i) oracle += f(kTwoPi * i / M, kTwoPi * j / M);
  }
  oracle *= cplx(0, -2.0) * (kTwoPi / M) * (kTwoPi / M);
  CHECK(std::abs(val - oracle) < 1e-10 * std::abs(oracle));
}

TEST_CASE("integrate_two_form rejects mismatched grids") {
  Surface s = unit_torus(32);
  TwoForm w{CField(Grid{16, 16, kTwoPi, kTwoPi})};
  CHECK_THROWS_AS(integrate_two_form(s, w), std::invalid_argument);
}

TEST_CASE("wedge_one_one: antisymmetry is exact") {
  Surface s = unit_torus(32);
  Rng rng(7);
  OneForm p = OneForm::imaginary(random_complex_field(s, rng, 5));
  OneForm q = OneForm::imaginary(random_complex_field(s, rng, 5));
  TwoForm pq = wedge_one_one(p, q), qp = wedge_one_one(q, p);
  for (std::size_t i = 0; i < pq.c.size(); ++i) CHECK(pq.c[i] == -qp.c[i]);
  TwoForm pp = wedge_one_one(p, p);
  CHECK(max_abs(pp.c) == 0.0);
}

TEST_CASE("wedge_one_one: constant forms against the three-line brute-force oracle") {
  Surface s = unit_torus(32);
  const Grid& g = s.grid();
  CField ca(g), cb(g);
  for (auto& x : ca.v) x = 1.0;
  for (auto& x : cb.v) x = cplx(0, 1);
  OneForm p = OneForm::imaginary(ca), q = OneForm::imaginary(cb);
  cplx val = integrate_two_form(s, wedge_one_one(p, q));

  cplx oracle = 0;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    oracle += (std::conj(ca[i]) * cb[i] - ca[i] * std::conj(cb[i])) * cplx(0, -2.0);
  }
  oracle *= g.dx() * g.dy();
  CHECK(std::abs(val - oracle) < 1e-12 * std::abs(oracle));
  // (conj(a) b - a conj(b)) = 2i for a=1,b=i, so the integral is 16 pi^2
  CHECK(val.real() == doctest::Approx(16 * kPi * kPi).epsilon(1e-13));
  CHECK(std::abs(val.imag()) < 1e-12);
}

TEST_CASE("wedge reality: the pairing of imaginary-valued forms integrates real") {
  Surface s = unit_torus(32);
  Rng rng(11);
  OneForm p = OneForm::imaginary(random_complex_field(s, rng, 5));
  OneForm q = OneForm::imaginary(random_complex_field(s, rng, 5));
  cplx val = integrate_two_form(s, wedge_one_one(p, q));
  CHECK(std::abs(val.imag()) < 1e-12 * (1.0 + std::abs(val.real())));
}

TEST_CASE("hodge1 matches the stated convention on imaginary-valued forms") {
  Surface s = unit_torus(32);
  Rng rng(3);
  CField a = random_complex_field(s, rng, 5);
  OneForm p = OneForm::imaginary(a);
  OneForm sp = hodge1(p);
  // *1 (a dz - conj(a) dzbar) = -i (a dz + conj(a) dzbar)
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(sp.c10[i] - cplx(0, -1) * a[i]) < 1e-14);
    CHECK(std::abs(sp.c01[i] - cplx(0, -1) * std::conj(a[i])) < 1e-14);
  }
  CHECK(sp.imaginary_valued);
  CHECK(sp.imaginary_defect() < 1e-14);

  OneForm spp = hodge1(sp);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(spp.c10[i] == -p.c10[i]);
    CHECK(spp.c01[i] == -p.c01[i]);
  }

  OneForm zero = OneForm::imaginary(CField(s.grid()));
  CHECK(max_abs(hodge1(zero).c10) == 0.0);
}

TEST_CASE("hodge2 conventions and involution") {
  Grid g{16, 16, kTwoPi, kTwoPi};
  CField eta(g);
  for (auto& x : eta.v) x = 1.0;
  OneForm p = OneForm::general(eta, CField(g));
  OneForm sp = hodge2(p);
  // dz -> -dzbar
  CHECK(max_abs(sp.c10) == 0.0);
  CHECK(sp.c01[0] == cplx(-1, 0));

  OneForm spp = hodge2(sp);
  CHECK(spp.c10[0] == cplx(-1, 0));
  CHECK(max_abs(spp.c01) == 0.0);

  // i dz -> i dzbar
  for (auto& x : eta.v) x = cplx(0, 1);
  OneForm q = OneForm::general(eta, CField(g));
  CHECK(hodge2(q).c01[0] == cplx(0, 1));
}

TEST_CASE("d_zero_form: constants, an explicit mode, and the finite-difference oracle") {
  Surface s = unit_torus(128);
  const Grid& g = s.grid();

  CField c(g);
  for (auto& x : c.v) x = cplx(2.5, -0.5);
  OneForm dc = d_zero_form(s, c);
  CHECK(max_abs(dc.c10) < 1e-13);
  CHECK(max_abs(dc.c01) < 1e-13);

  CField f = sampled(g, [](double x, double) { return cplx(0, std::sin(x)); });
  OneForm df = d_zero_form(s, f);
  CHECK(df.imaginary_valued);
  // df = (i cos x / 2)(dz + dzbar)
  for (int ix = 0; ix < g.nx; ix += 7) {
    cplx expected = cplx(0, 0.5 * std::cos(g.x(ix)));
    CHECK(std::abs(df.c10.at(ix, 3) - expected) < 1e-12);
    CHECK(std::abs(df.c01.at(ix, 3) - expected) < 1e-12);
  }
  // second-order centered differences agree to O(dx^2)
  CField ox = fd_x(f), oy = fd_y(f);
  double worst = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    cplx fd10 = 0.5 * (ox[i] - cplx(0, 1) * oy[i]);
    worst = std::max(worst, std::abs(fd10 - df.c10[i]));
  }
  CHECK(worst < 1.0 * g.dx() * g.dx());
  CHECK(worst > 1e-8);  // the oracle is genuinely independent, not the same code path
}

TEST_CASE("d_zero_form: product rule holds spectrally for band-limited fields") {
  Surface s = unit_torus(64);
  Rng rng(19);
  CField f = random_complex_field(s, rng, 6), g2 = random_complex_field(s, rng, 6);
  OneForm dfg = d_zero_form(s, f * g2);
  OneForm df = d_zero_form(s, f), dg = d_zero_form(s, g2);
  double worst = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::abs(dfg.c10[i] - f[i] * dg.c10[i] - g2[i] * df.c10[i]));
    worst = std::max(worst, std::abs(dfg.c01[i] - f[i] * dg.c01[i] - g2[i] * df.c01[i]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("integration by parts: int d f ^ q = - int f dq for band-limited data") {
  Surface s = unit_torus(64);
  Rng rng(23);
  CField f = random_complex_field(s, rng, 5);
  OneForm q = OneForm::imaginary(random_complex_field(s, rng, 5));
  cplx t1 = integrate_two_form(s, wedge_one_one(d_zero_form(s, f), q));
  TwoForm fdq = d_one_form(s, q);
  for (std::size_t i = 0; i < f.size(); ++i) fdq.c[i] *= f[i];
  cplx t2 = integrate_two_form(s, fdq);
  CHECK(std::abs(t1 + t2) < 1e-10);
}

TEST_CASE("two-form purely-imaginary flag detects real coefficients") {
  Surface s = unit_torus(16);
  TwoForm w = volume_form(s);
  CHECK(w.imaginary_form_defect() < 1e-15);
  w.c[5] += cplx(0, 1e-3);
  CHECK(w.imaginary_form_defect() > 1e-4);
}

TEST_CASE("spectral derivatives on an asymmetric grid match analytic modes") {
  Grid g{48, 32, 5.0, 4.0};
  Surface s(g, 1.0);
  const double kx = kTwoPi / 5.0, ky = kTwoPi / 4.0;
  CField f = sampled(g, [&](double x, double y) { return std::sin(kx * x) * std::cos(ky * y); });
  OneForm df = d_zero_form(s, f);
  double worst = 0;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      double x = g.x(ix), y = g.y(iy);
      cplx dx = kx * std::cos(kx * x) * std::cos(ky * y);
      cplx dy = -ky * std::sin(kx * x) * std::sin(ky * y);
      cplx expected = 0.5 * (dx - cplx(0, 1) * dy);
      worst = std::max(worst, std::abs(df.c10.at(ix, iy) - expected));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("surface validation") {
  Grid g{32, 32, kTwoPi, kTwoPi};
  RField bad(g);
  for (auto& x : bad.v) x = 1.0;
  bad.at(3, 4) = -0.2;
  CHECK_THROWS_AS(Surface(g, bad), std::invalid_argument);

  // a field with all its energy at the Nyquist mode is not smooth-periodic
  RField rough(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) rough.at(ix, iy) = 2.0 + 0.5 * ((ix + iy) % 2 ? -1 : 1);
  }
  CHECK_THROWS_AS(Surface(g, rough), std::invalid_argument);

  Surface ok(g, 1.5);
  CHECK(ok.area() == doctest::Approx(1.5 * 1.5 * 4 * kPi * kPi));
}
