#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "robustdeg/matrix_sampling.hpp"

using namespace robustdeg;

TEST(MaxSingularValue, Examples) {
  Eigen::MatrixXd d(2, 2);
  d << 3, 0, 0, -4;
  EXPECT_NEAR(max_singular_value(d), 4.0, 1e-14);
  Eigen::MatrixXd row(1, 3);
  row << 1, 2, 2;
  EXPECT_NEAR(max_singular_value(row), 3.0, 1e-14);
  Eigen::MatrixXcd z(1, 1);
  z << std::complex<double>(3, 4);
  EXPECT_NEAR(max_singular_value(z), 5.0, 1e-14);
}

TEST(MaxSingularValue, AgreesWithJacobiSvd) {
  CounterRng rng(1, 0);
  for (int k = 0; k < 50; ++k) {
    Eigen::MatrixXcd a(3, 4);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      a.data()[i] = {standard_normal(rng), standard_normal(rng)};
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    EXPECT_NEAR(max_singular_value(a), svd.singularValues()[0], 1e-10);
  }
}

TEST(SingularValueDensity, NormalizationGivesBallVolume) {
  // 1x1: unit disk, area pi = 2 pi * int s ds.
  EXPECT_NEAR(SingularValueDensity(1, 1).normalization() * 0.5, std::numbers::pi, 1e-12);
  // 2x1: unit ball of R^4, volume pi^2 / 2 = 2 pi^2 * int s^3 ds.
  EXPECT_NEAR(SingularValueDensity(2, 1).normalization() * 0.25,
              std::numbers::pi * std::numbers::pi / 2, 1e-12);
  EXPECT_THROW(SingularValueDensity(1, 2), InvalidArgument);
}

TEST(SingularValueDensity, EnvelopeDominatesDensity) {
  for (auto [m, n] : {std::pair{2, 2}, {3, 2}, {3, 3}, {4, 4}}) {
    const auto& density = *singular_value_density(m, n);
    CounterRng rng(3, static_cast<std::uint64_t>(m * 10 + n));
    std::vector<double> s(n);
    for (int k = 0; k < 20000; ++k) {
      for (auto& v : s) v = uniform_open01(rng);
      std::sort(s.begin(), s.end(), std::greater<>());
      ASSERT_LE(density(s), density.envelope()) << m << "x" << n;
    }
  }
}

// With m = n = 2 the marginals integrate in closed form:
// Pr(s1 <= t) = t^8 and Pr(s2 <= t) = 1 - (1 - t^2)^4.
TEST(SingularValues, Complex2x2Marginals) {
  CounterRng rng(21, 0);
  const int n = 40000;
  const std::vector<double> ts{0.3, 0.5, 0.7, 0.9};
  std::vector<int> hi(ts.size()), lo(ts.size());
  for (int k = 0; k < n; ++k) {
    const auto s = sample_singular_values(2, 2, rng);
    ASSERT_GE(s[0], s[1]);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      hi[j] += s[0] <= ts[j];
      lo[j] += s[1] <= ts[j];
    }
  }
  for (std::size_t j = 0; j < ts.size(); ++j) {
    const double t = ts[j];
    const double p_hi = std::pow(t, 8), p_lo = 1 - std::pow(1 - t * t, 4);
    EXPECT_NEAR(hi[j] / double(n), p_hi, 4 * std::sqrt(p_hi * (1 - p_hi) / n) + 1e-4);
    EXPECT_NEAR(lo[j] / double(n), p_lo, 4 * std::sqrt(p_lo * (1 - p_lo) / n) + 1e-4);
  }
}

TEST(SingularValues, ChiSquareOnSmallestValue2x2) {
  CounterRng rng(22, 0);
  const int n = 40000, bins = 10;
  std::vector<int> count(bins);
  for (int k = 0; k < n; ++k) {
    const auto s = sample_singular_values(2, 2, rng);
    ++count[std::min(bins - 1, static_cast<int>(s[1] * bins))];
  }
  auto cdf = [](double t) { return 1 - std::pow(1 - t * t, 4); };
  double chi2 = 0.0;
  for (int b = 0; b < bins; ++b) {
    const double e = n * (cdf((b + 1.0) / bins) - cdf(double(b) / bins));
    if (e < 5) continue;
    chi2 += (count[b] - e) * (count[b] - e) / e;
  }
  // 99.9% quantile of chi-square with 9 degrees of freedom.
  EXPECT_LT(chi2, 27.88);
}

TEST(SingularValues, Complex2x1Cdf) {
  CounterRng rng(23, 0);
  const int n = 40000;
  int below = 0;
  for (int k = 0; k < n; ++k) {
    below += sample_singular_values(2, 1, rng)[0] <= 0.8;
  }
  const double p = std::pow(0.8, 4);
  EXPECT_NEAR(below / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(Haar, UnitaryAndUniformModulus) {
  CounterRng rng(31, 0);
  const int n = 3, draws = 20000;
  double mean_sq = 0.0;
  std::complex<double> mean_entry = 0.0;
  for (int k = 0; k < draws; ++k) {
    const auto u = haar_unitary(n, rng);
    if (k < 50) {
      EXPECT_TRUE((u.adjoint() * u).isIdentity(1e-12));
    }
    mean_sq += std::norm(u(0, 0));
    mean_entry += u(0, 0);
  }
  EXPECT_NEAR(mean_sq / draws, 1.0 / n, 0.01);
  // Phase of an entry is uniform, so its mean vanishes.
  EXPECT_LT(std::abs(mean_entry / double(draws)), 0.02);
}

TEST(ComplexFullBlock, RadialLawAndShape) {
  CounterRng rng(41, 0);
  const int n = 20000;
  int below = 0;
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXcd x = sample_complex_full_block(2, 3, 2.0, rng);
    ASSERT_EQ(x.rows(), 2);
    ASSERT_EQ(x.cols(), 3);
    const double s = max_singular_value(x);
    ASSERT_LE(s, 2.0 + 1e-12);
    below += s <= 1.8;
  }
  const double p = std::pow(0.9, 12);
  EXPECT_NEAR(below / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(RealFullBlock, CapOnSize) {
  CounterRng rng(1, 0);
  EXPECT_THROW(sample_real_full_block(2, 5, 1.0, rng), Unsupported);
  const Eigen::MatrixXd x = sample_real_full_block(3, 3, 0.5, rng);
  EXPECT_LE(max_singular_value(x), 0.5);
}
