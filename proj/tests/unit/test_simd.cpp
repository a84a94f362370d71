#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "kgforge/common/rng.hpp"
#include "kgforge/simd/vector_ops.hpp"

using namespace kgforge;

namespace {

std::vector<float> random_vec(Rng& rng, std::size_t n) {
  std::vector<float> v(n);
  for (auto& x : v) x = static_cast<float>(rng.uniform(-2, 2));
  return v;
}

std::vector<const simd::KernelTable*> vector_tables() {
  std::vector<const simd::KernelTable*> out;
  if (auto* k = simd::avx2_kernels()) out.push_back(k);
  if (auto* k = simd::neon_kernels()) out.push_back(k);
  return out;
}

// Relative tolerance for reassociated float sums.
void expect_close(float a, float b, float scale) { EXPECT_NEAR(a, b, 1e-5f * std::max(1.0f, scale)); }

}  // namespace

TEST(Simd, ScalarKernelsMatchNaiveLoops) {
  Rng rng(5);
  const auto& k = simd::scalar_kernels();
  for (std::size_t n : {0u, 1u, 7u, 64u}) {
    auto a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n);
    double d = 0, l1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      d += double(a[i]) * b[i];
      l1 += std::fabs(a[i]);
    }
    EXPECT_NEAR(k.dot(a.data(), b.data(), n), d, 1e-4);
    EXPECT_NEAR(k.l1_norm(a.data(), n), l1, 1e-4);
    std::vector<float> out(n);
    k.add_sub(a.data(), b.data(), c.data(), out.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_FLOAT_EQ(out[i], a[i] + b[i] - c[i]);
  }
}

TEST(Simd, VectorizedKernelsMatchScalar) {
  const auto tables = vector_tables();
  if (tables.empty()) GTEST_SKIP() << "no vector ISA on this CPU";
  Rng rng(11);
  const auto& s = simd::scalar_kernels();
  for (const auto* k : tables) {
    for (std::size_t n : {1u, 3u, 8u, 15u, 16u, 17u, 31u, 64u, 100u, 257u}) {
      auto a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n);
      expect_close(k->dot(a.data(), b.data(), n), s.dot(a.data(), b.data(), n), float(n));
      expect_close(k->l1_norm(a.data(), n), s.l1_norm(a.data(), n), float(n));

      auto y1 = b, y2 = b;
      k->axpy(0.37f, a.data(), y1.data(), n);
      s.axpy(0.37f, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) expect_close(y1[i], y2[i], 1);

      auto x1 = a, x2 = a;
      k->scale(-1.5f, x1.data(), n);
      s.scale(-1.5f, x2.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_FLOAT_EQ(x1[i], x2[i]);

      std::vector<float> o1(n), o2(n);
      k->add_sub(a.data(), b.data(), c.data(), o1.data(), n);
      s.add_sub(a.data(), b.data(), c.data(), o2.data(), n);
      for (std::size_t i = 0; i < n; ++i) expect_close(o1[i], o2[i], 1);
    }
  }
}

TEST(Simd, ActiveIsaCanBePinned) {
  const auto before = simd::active_isa();
  simd::set_active_isa(simd::Isa::Scalar);
  EXPECT_EQ(simd::active_isa(), simd::Isa::Scalar);
  EXPECT_EQ(&simd::kernels(), &simd::scalar_kernels());
  std::vector<float> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_FLOAT_EQ(simd::dot(a, b), 32.0f);
  EXPECT_FLOAT_EQ(simd::squared_norm(a), 14.0f);
  simd::set_active_isa(before);
  EXPECT_EQ(simd::isa_name(simd::Isa::Scalar), "scalar");
}

TEST(Simd, UnavailableIsaIsRejected) {
  for (auto isa : {simd::Isa::Avx2, simd::Isa::Neon})
    if (!simd::isa_available(isa)) {
      EXPECT_THROW(simd::set_active_isa(isa), std::invalid_argument);
    }
}
