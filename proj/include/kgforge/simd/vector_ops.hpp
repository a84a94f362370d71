#pragma once
// Dense float kernels used by the embedding trainers.
//
// Every kernel has a scalar reference implementation; vectorized variants
// (AVX2+FMA on x86-64, NEON on aarch64) are selected once at startup from the
// CPU feature bits and can be pinned with KGFORGE_SIMD=scalar|avx2|neon.

#include <cstddef>
#include <span>
#include <string_view>

namespace kgforge::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  float (*dot)(const float* a, const float* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(float alpha, const float* x, float* y, std::size_t n);
  // x *= alpha
  void (*scale)(float alpha, float* x, std::size_t n);
  // out = a + b - c
  void (*add_sub)(const float* a, const float* b, const float* c, float* out, std::size_t n);
  float (*l1_norm)(const float* x, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_kernels() noexcept;
const KernelTable* neon_kernels() noexcept;

bool isa_available(Isa isa) noexcept;
Isa active_isa() noexcept;
// Throws std::invalid_argument if the requested ISA is unavailable.
void set_active_isa(Isa isa);

const KernelTable& kernels() noexcept;

inline float dot(std::span<const float> a, std::span<const float> b) noexcept {
  return kernels().dot(a.data(), b.data(), a.size());
}
inline void axpy(float alpha, std::span<const float> x, std::span<float> y) noexcept {
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(float alpha, std::span<float> x) noexcept { kernels().scale(alpha, x.data(), x.size()); }
inline void add_sub(std::span<const float> a, std::span<const float> b, std::span<const float> c,
                    std::span<float> out) noexcept {
  kernels().add_sub(a.data(), b.data(), c.data(), out.data(), out.size());
}
inline float squared_norm(std::span<const float> x) noexcept { return dot(x, x); }
inline float l1_norm(std::span<const float> x) noexcept { return kernels().l1_norm(x.data(), x.size()); }

}  // namespace kgforge::simd
