#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlab {

using cplx = std::complex<double>;

/// Uniform periodic grid on the rectangle [0,Lx) x [0,Ly).
struct Grid {
  int nx = 0;
  int ny = 0;
  double Lx = 0.0;
  double Ly = 0.0;

  double dx() const { return Lx / nx; }
  double dy() const { return Ly / ny; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  double x(int ix) const { return ix * dx(); }
  double y(int iy) const { return iy * dy(); }
  cplx z(int ix, int iy) const { return {x(ix), y(iy)}; }

  bool operator==(const Grid&) const = default;
};

void require_same_grid(const Grid& a, const Grid& b, const std::string& what);

/// Scalar field sampled on a Grid, row-major with x fastest.
template <class T>
struct Field {
  Grid grid;
  std::vector<T> v;

  Field() = default;
  explicit Field(const Grid& g, T fill = T{}) : grid(g), v(g.size(), fill) {}

  T& at(int ix, int iy) { return v[static_cast<std::size_t>(iy) * grid.nx + ix]; }
  const T& at(int ix, int iy) const { return v[static_cast<std::size_t>(iy) * grid.nx + ix]; }
  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }
  std::size_t size() const { return v.size(); }
};

using RField = Field<double>;
using CField = Field<cplx>;

CField to_complex(const RField& f);
RField real_part(const CField& f);
RField imag_part(const CField& f);
CField conj(const CField& f);

double max_abs(const RField& f);
double max_abs(const CField& f);
double max_abs_real(const CField& f);
double max_abs_imag(const CField& f);

// pointwise arithmetic used all over the library
CField operator+(const CField& a, const CField& b);
CField operator-(const CField& a, const CField& b);
CField operator*(const CField& a, const CField& b);
CField operator*(cplx s, const CField& a);
CField operator*(const CField& a, const RField& b);
RField operator*(const RField& a, const RField& b);
RField operator+(const RField& a, const RField& b);
RField operator-(const RField& a, const RField& b);
RField operator*(double s, const RField& a);

}  // namespace vlab
