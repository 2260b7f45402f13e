#include <gtest/gtest.h>

#include <set>

#include "robustdeg/rng.hpp"

using namespace robustdeg;

// Known-answer vectors for Philox4x32-10.
TEST(Philox, KnownAnswerZero) {
  const auto out = philox4x32_10({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (PhiloxBlock{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                 {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (PhiloxBlock{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                 {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (PhiloxBlock{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, SameSeedAndStreamRepeat) {
  CounterRng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a(), b());
  }
  EXPECT_EQ(a.blocks(), 250u);
}

TEST(CounterRng, StreamsAndSeedsDiffer) {
  std::set<std::uint32_t> firsts;
  for (std::uint64_t s = 0; s < 64; ++s) {
    CounterRng rng(1, s);
    firsts.insert(rng());
    CounterRng other(s + 2, 0);
    firsts.insert(other());
  }
  EXPECT_EQ(firsts.size(), 128u);
}

TEST(CounterRng, HighStreamBitsMatter) {
  CounterRng a(5, 1), b(5, std::uint64_t{1} << 63 | 1);
  EXPECT_NE(a(), b());
}

TEST(Uniform, OpenIntervalAndMean) {
  CounterRng rng(3, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_open01(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12 / n));
}

TEST(Normal, MeanAndVariance) {
  CounterRng rng(9, 0);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(rng);
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 4 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4 * std::sqrt(2.0 / n));
}

TEST(Gamma, MeanEqualsShape) {
  CounterRng rng(11, 0);
  for (double shape : {0.5, 1.0, 1.0 / 3}) {
    double s = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      s += standard_gamma(rng, shape);
    }
    EXPECT_NEAR(s / n, shape, 5 * std::sqrt(shape / n)) << "shape " << shape;
  }
}
