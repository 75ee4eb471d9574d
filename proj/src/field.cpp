#include "vlab/field.hpp"

#include <algorithm>
#include <cmath>

namespace vlab {

void require_same_grid(const Grid& a, const Grid& b, const std::string& what) {
  if (!(a == b)) {
    throw std::invalid_argument(what + ": grid mismatch (" + std::to_string(a.nx) + "x" +
                                std::to_string(a.ny) + " vs " + std::to_string(b.nx) + "x" +
                                std::to_string(b.ny) + ")");
  }
}

CField to_complex(const RField& f) {
  CField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

RField real_part(const CField& f) {
  RField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

RField imag_part(const CField& f) {
  RField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].imag();
  return out;
}

CField conj(const CField& f) {
  CField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::conj(f[i]);
  return out;
}

double max_abs(const RField& f) {
  double m = 0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const CField& f) {
  double m = 0;
  for (const cplx& x : f.v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_real(const CField& f) {
  double m = 0;
  for (const cplx& x : f.v) m = std::max(m, std::abs(x.real()));
  return m;
}

double max_abs_imag(const CField& f) {
  double m = 0;
  for (const cplx& x : f.v) m = std::max(m, std::abs(x.imag()));
  return m;
}

namespace {
template <class T, class Op>
Field<T> zip(const Field<T>& a, const Field<T>& b, Op op, const char* what) {
  require_same_grid(a.grid, b.grid, what);
  Field<T> out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return out;
}
}  // namespace

CField operator+(const CField& a, const CField& b) {
  return zip(a, b, [](cplx x, cplx y) { return x + y; }, "field add");
}
CField operator-(const CField& a, const CField& b) {
  return zip(a, b, [](cplx x, cplx y) { return x - y; }, "field sub");
}
CField operator*(const CField& a, const CField& b) {
  return zip(a, b, [](cplx x, cplx y) { return x * y; }, "field mul");
}
CField operator*(cplx s, const CField& a) {
  CField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}
CField operator*(const CField& a, const RField& b) {
  require_same_grid(a.grid, b.grid, "field mul");
  CField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}
RField operator*(const RField& a, const RField& b) {
  return zip(a, b, [](double x, double y) { return x * y; }, "field mul");
}
RField operator+(const RField& a, const RField& b) {
  return zip(a, b, [](double x, double y) { return x + y; }, "field add");
}
RField operator-(const RField& a, const RField& b) {
  return zip(a, b, [](double x, double y) { return x - y; }, "field sub");
}
RField operator*(double s, const RField& a) {
  RField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

}  // namespace vlab
