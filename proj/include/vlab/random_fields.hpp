#pragma once

#include <cstdint>

#include "vlab/tangent.hpp"

namespace vlab {

/// Deterministic generator (splitmix64 + Box-Muller); identical streams on
/// every platform, so seeded reports are reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform();  // [0,1)
  double gauss();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0;
};

/// Smooth random fields: independent Gaussian Fourier modes up to |m| <= kcut,
/// unit-RMS normalization.
RField random_real_field(const Surface& s, Rng& rng, int kcut);
CField random_complex_field(const Surface& s, Rng& rng, int kcut);
CField random_imaginary_field(const Surface& s, Rng& rng, int kcut);  // i * real

TangentVector random_tangent(const Bundle& b, Rng& rng, int kcut);

}  // namespace vlab
