#include "schain/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace schain::kernels {

namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void hadamard_scalar(const double* x, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void scale3_scalar(const double* x, const double* s, double c, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * s[i] * c;
}

void scale_inplace_scalar(double* x, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double sqdist_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

constexpr Ops kScalarOps{axpy_scalar, hadamard_scalar,      scale3_scalar, scale_inplace_scalar,
                         sum_scalar,  dot_scalar,           sqdist_scalar, "scalar"};

const Ops* pick_default() {
  if (const char* env = std::getenv("SCHAIN_SIMD")) {
    std::string_view want(env);
    if (want == "scalar") return &kScalarOps;
    if (want == "avx2" && avx2_ops() != nullptr) return avx2_ops();
    // unknown or unavailable value falls through to auto
  }
  if (const Ops* simd = avx2_ops()) return simd;
  return &kScalarOps;
}

std::atomic<const Ops*>& active_slot() {
  static std::atomic<const Ops*> slot{pick_default()};
  return slot;
}

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

const Ops& active() { return *active_slot().load(std::memory_order_relaxed); }

bool force_lane(std::string_view name) {
  if (name == "scalar") {
    active_slot().store(&kScalarOps, std::memory_order_relaxed);
    return true;
  }
  if (name == "avx2") {
    if (const Ops* simd = avx2_ops()) {
      active_slot().store(simd, std::memory_order_relaxed);
      return true;
    }
    return false;
  }
  return false;
}

#ifndef SCHAIN_HAVE_AVX2
const Ops* avx2_ops() { return nullptr; }
#endif

}  // namespace schain::kernels
