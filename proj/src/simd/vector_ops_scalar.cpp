#include "kgforge/simd/vector_ops.hpp"

#include <cmath>

namespace kgforge::simd {
namespace {

float dot_scalar(const float* a, const float* b, std::size_t n) {
  float acc = 0.0f;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(float alpha, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(float alpha, float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void add_sub_scalar(const float* a, const float* b, const float* c, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i] - c[i];
}

float l1_norm_scalar(const float* x, std::size_t n) {
  float acc = 0.0f;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
  return acc;
}

constexpr KernelTable kScalar{dot_scalar, axpy_scalar, scale_scalar, add_sub_scalar, l1_norm_scalar};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace kgforge::simd
