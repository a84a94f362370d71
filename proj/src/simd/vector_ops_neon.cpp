#include <arm_neon.h>

#include "kgforge/simd/vector_ops.hpp"

namespace kgforge::simd {
namespace {

float dot_neon(const float* a, const float* b, std::size_t n) {
  float32x4_t acc = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = vfmaq_f32(acc, vld1q_f32(a + i), vld1q_f32(b + i));
  float s = vaddvq_f32(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_neon(float alpha, const float* x, float* y, std::size_t n) {
  const float32x4_t va = vdupq_n_f32(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(y + i, vfmaq_f32(vld1q_f32(y + i), va, vld1q_f32(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_neon(float alpha, float* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(x + i, vmulq_n_f32(vld1q_f32(x + i), alpha));
  for (; i < n; ++i) x[i] *= alpha;
}

void add_sub_neon(const float* a, const float* b, const float* c, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vst1q_f32(out + i, vsubq_f32(vaddq_f32(vld1q_f32(a + i), vld1q_f32(b + i)), vld1q_f32(c + i)));
  for (; i < n; ++i) out[i] = a[i] + b[i] - c[i];
}

float l1_norm_neon(const float* x, std::size_t n) {
  float32x4_t acc = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = vaddq_f32(acc, vabsq_f32(vld1q_f32(x + i)));
  float s = vaddvq_f32(acc);
  for (; i < n; ++i) s += x[i] < 0 ? -x[i] : x[i];
  return s;
}

constexpr KernelTable kNeon{dot_neon, axpy_neon, scale_neon, add_sub_neon, l1_norm_neon};

}  // namespace

const KernelTable* neon_kernels_compiled() noexcept { return &kNeon; }

}  // namespace kgforge::simd
