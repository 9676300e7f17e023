#pragma once

#include <cstddef>
#include <string_view>

namespace schain::kernels {

// Dense inner-loop primitives. Every entry point has a scalar reference
// implementation and (on x86-64) an AVX2/FMA variant; the active table is
// picked once at startup from CPU features, overridable with SCHAIN_SIMD.
struct Ops {
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[i] = x[i] * y[i]
  void (*hadamard)(const double* x, const double* y, double* out, std::size_t n);
  // out[i] = x[i] * s[i] * c
  void (*scale3)(const double* x, const double* s, double c, double* out, std::size_t n);
  // x[i] *= c
  void (*scale_inplace)(double* x, double c, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i (x[i]-y[i])^2
  double (*sqdist)(const double* x, const double* y, std::size_t n);
  std::string_view name;
};

const Ops& scalar_ops();
// nullptr when the binary lacks the AVX2 lane or the CPU does not support it.
const Ops* avx2_ops();

const Ops& active();
// Test hook; "scalar" or "avx2". Returns false if the lane is unavailable.
bool force_lane(std::string_view name);

inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void hadamard(const double* x, const double* y, double* out, std::size_t n) {
  active().hadamard(x, y, out, n);
}
inline void scale3(const double* x, const double* s, double c, double* out, std::size_t n) {
  active().scale3(x, s, c, out, n);
}
inline void scale_inplace(double* x, double c, std::size_t n) { active().scale_inplace(x, c, n); }
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
inline double sqdist(const double* x, const double* y, std::size_t n) { return active().sqdist(x, y, n); }

}  // namespace schain::kernels
