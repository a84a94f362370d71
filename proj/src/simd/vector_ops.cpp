#include "kgforge/simd/vector_ops.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace kgforge::simd {

#if defined(KGFORGE_HAVE_AVX2)
const KernelTable* avx2_kernels_compiled() noexcept;
#endif
#if defined(KGFORGE_HAVE_NEON)
const KernelTable* neon_kernels_compiled() noexcept;
#endif

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable* avx2_kernels() noexcept {
#if defined(KGFORGE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? avx2_kernels_compiled() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() noexcept {
#if defined(KGFORGE_HAVE_NEON)
  return neon_kernels_compiled();  // NEON is mandatory on aarch64
#else
  return nullptr;
#endif
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return avx2_kernels() != nullptr;
    case Isa::Neon: return neon_kernels() != nullptr;
  }
  return false;
}

namespace {

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return &scalar_kernels();
    case Isa::Avx2: return avx2_kernels();
    case Isa::Neon: return neon_kernels();
  }
  return nullptr;
}

Isa detect_isa() noexcept {
  if (const char* forced = std::getenv("KGFORGE_SIMD")) {
    std::string_view f(forced);
    if (f == "scalar") return Isa::Scalar;
    if (f == "avx2" && avx2_kernels()) return Isa::Avx2;
    if (f == "neon" && neon_kernels()) return Isa::Neon;
  }
  if (avx2_kernels()) return Isa::Avx2;
  if (neon_kernels()) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detect_isa()};
  return isa;
}

}  // namespace

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("SIMD variant not available: " + std::string(isa_name(isa)));
  active().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels() noexcept { return *table_for(active_isa()); }

}  // namespace kgforge::simd
