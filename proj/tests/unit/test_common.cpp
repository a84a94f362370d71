#include <gtest/gtest.h>

#include <atomic>
#include <set>

#include "kgforge/common/error.hpp"
#include "kgforge/common/parallel.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"

using namespace kgforge;

TEST(Text, SplitKeepsEmptyFields) {
  EXPECT_EQ(text::split("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(text::split("", '|'), (std::vector<std::string>{""}));
}

TEST(Text, JoinInvertsSplit) {
  const std::vector<std::string> parts = {"x", "", "yz"};
  EXPECT_EQ(text::split(text::join(parts, "|"), '|'), parts);
}

TEST(Text, ParseNumbers) {
  EXPECT_EQ(text::parse_int("2022"), 2022);
  EXPECT_FALSE(text::parse_int("20x"));
  EXPECT_FALSE(text::parse_int(""));
  EXPECT_DOUBLE_EQ(*text::parse_double("0.25"), 0.25);
  EXPECT_FALSE(text::parse_double("abc"));
}

TEST(Text, FormatDoubleRoundTrips) {
  for (double v : {0.0, 1.0, 7.0 / 22.0, 1e-9, 12345.678, -3.5}) EXPECT_EQ(*text::parse_double(text::format_double(v)), v);
  EXPECT_EQ(text::format_double(1.0), "1");
  EXPECT_EQ(text::format_double(0.5), "0.5");
}

TEST(Text, CaseHelpers) {
  EXPECT_EQ(text::to_lower("MiRNA"), "mirna");
  EXPECT_TRUE(text::contains_icase("Hsa-MiR-106a", "mir-106"));
  EXPECT_EQ(text::trim("  x y \t"), "x y");
}

TEST(Text, Fnv1aKnownVectors) {
  EXPECT_EQ(text::fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(text::fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Text, Sha256KnownVector) {
  EXPECT_EQ(text::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Text, MixSeedSeparatesStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 100; ++s) seen.insert(text::mix_seed(42, s));
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_EQ(text::mix_seed(1, 2), text::mix_seed(1, 2));
}

TEST(RngTest, BelowIsInRangeAndCoversAll) {
  Rng rng(7);
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 6000; ++i) ++hits[rng.below(6)];
  for (int h : hits) EXPECT_GT(h, 850);
}

TEST(RngTest, UniformInUnitInterval) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next(), b.next());
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng rng(3);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[i] = i;
  rng.shuffle(v.begin(), v.end());
  std::set<int> s(v.begin(), v.end());
  EXPECT_EQ(s.size(), 50u);
}

TEST(Parallel, EveryIndexVisitedOnce) {
  for (unsigned jobs : {1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(100, 4, [](std::size_t i) {
                 if (i == 37) throw Error(Errc::InvalidValue, "boom");
               }),
               Error);
}

TEST(Errors, CodeAndNameSurvive) {
  try {
    throw Error(Errc::DuplicateCurie, "x");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DuplicateCurie);
    EXPECT_EQ(errc_name(e.code()), "DuplicateCurie");
  }
  SyntaxError s(12, {"RETURN"}, "RETRUN");
  EXPECT_EQ(s.position(), 12u);
  EXPECT_EQ(s.code(), Errc::SyntaxError);
}
