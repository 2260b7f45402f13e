#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "../oracles.hpp"
#include "robustdeg/engine.hpp"

using namespace robustdeg;

namespace {

const UncertaintySet kBox = LpBall(std::numeric_limits<double>::infinity(), 3);

RunSettings settings(RadiusGrid grid, std::uint64_t n, std::uint64_t seed = 1,
                     unsigned workers = 1) {
  RunSettings s;
  s.grid = std::move(grid);
  s.samples_per_radius = n;
  s.seed = seed;
  s.workers = workers;
  return s;
}

auto always_true = [](const UncertaintyPoint&) { return true; };

}  // namespace

TEST(Grid, Linspace) {
  EXPECT_EQ(make_grid(0, 1, 5).radii(), (std::vector<double>{1, 0.75, 0.5, 0.25, 0}));
  EXPECT_EQ(make_grid(1, 2, 1).radii(), (std::vector<double>{2}));
  EXPECT_THROW(make_grid(2, 1, 5), InvalidArgument);
  EXPECT_THROW(make_grid(0, 1, 0), InvalidArgument);
}

TEST(Grid, RejectsTies) {
  try {
    RadiusGrid::from_radii({1, 1, 0.5});
    FAIL() << "accepted tied radii";
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "radii must be strictly decreasing");
  }
  EXPECT_THROW(RadiusGrid::from_radii({1, -0.5}), InvalidArgument);
}

TEST(ReuseFactor, TwoRadii) {
  const auto g = RadiusGrid::from_radii({1.0, 0.5});
  EXPECT_DOUBLE_EQ(theoretical_reuse_factor(g, 3), 2.0 / (2.0 - 0.125));
  EXPECT_DOUBLE_EQ(expected_fresh(g, 3, 0, 1000), 1000.0);
  EXPECT_DOUBLE_EQ(expected_fresh(g, 3, 1, 1000), 875.0);
}

TEST(ReuseFactor, MatchesOracleOnLinspace) {
  for (int d : {1, 3, 10, 34}) {
    EXPECT_NEAR(theoretical_reuse_factor(make_grid(0, 3, 100), d),
                oracle::reuse_factor(100, 0, 3, d), 1e-10);
  }
  EXPECT_DOUBLE_EQ(theoretical_reuse_factor(make_grid(0, 1, 1), 5), 1.0);
}

TEST(Engine, AlwaysTrueCompletesEveryRow) {
  const auto r = run_sample_reuse(settings(make_grid(0.5, 2, 10), 300), kBox, always_true);
  for (const auto& p : r.curve.points) {
    EXPECT_EQ(p.trials, 300u);
    EXPECT_EQ(p.successes, 300u);
    EXPECT_EQ(p.estimate, 1.0);
  }
  EXPECT_EQ(r.curve.points.front().fresh, 300u);
  const auto bound = lower_bound_curve(r.curve);
  for (std::size_t i = 0; i < bound.bound.size(); ++i) {
    EXPECT_EQ(bound.bound[i], r.curve.points[i].ci_low);
  }
  EXPECT_TRUE(bound.restricted_to_sampled);
}

TEST(Engine, ExactTopUp) {
  // Replay the credit rule from the recorded gauges to recover the tally
  // each phase starts from.
  const auto grid = make_grid(1, 2, 15);
  const std::uint64_t n = 500;
  std::vector<double> gauges;
  auto recorder = [&](const UncertaintyPoint& q) {
    gauges.push_back(gauge(kBox, q));
    return true;
  };
  const auto r = run_sample_reuse(settings(grid, n, 3), kBox, recorder);
  std::uint64_t total = 0;
  std::vector<std::size_t> phase_of;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    phase_of.insert(phase_of.end(), r.curve.points[i].fresh, i);
  }
  ASSERT_EQ(phase_of.size(), gauges.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::uint64_t entry = 0;
    for (std::size_t k = 0; k < gauges.size() && phase_of[k] < i; ++k) {
      entry += gauges[k] <= grid[i];
    }
    EXPECT_EQ(r.curve.points[i].fresh, entry < n ? n - entry : 0) << "phase " << i;
    EXPECT_EQ(r.tally[i].trials, n);
    total += r.curve.points[i].fresh;
  }
  EXPECT_EQ(total, r.report.total_evaluations);
  EXPECT_NEAR(r.report.empirical_factor, double(n) * 15 / total, 1e-12);
}

TEST(Engine, SingleRadius) {
  const auto r = run_sample_reuse(settings(RadiusGrid::from_radii({1.0}), 64), kBox,
                                  always_true);
  ASSERT_EQ(r.curve.points.size(), 1u);
  EXPECT_EQ(r.curve.points[0].fresh, 64u);
  EXPECT_DOUBLE_EQ(r.report.theoretical_factor, 1.0);
}

TEST(Engine, ZeroRadiusRow) {
  const auto grid = make_grid(0, 1, 4);
  auto r = run_sample_reuse(settings(grid, 100), kBox, always_true);
  EXPECT_EQ(r.curve.points.back().trials, 1u);
  EXPECT_EQ(r.curve.points.back().fresh, 1u);
  EXPECT_EQ(r.curve.points.back().ci_low, 1.0);
  EXPECT_FALSE(lower_bound_curve(r.curve).restricted_to_sampled);

  auto literal = settings(grid, 100);
  literal.literal_estimator = true;
  r = run_sample_reuse(literal, kBox, always_true);
  EXPECT_EQ(r.curve.points.back().trials, 100u);
  EXPECT_EQ(r.curve.points.back().fresh, 100u);
}

TEST(Engine, SyntheticThresholdTracksTruth) {
  const double r_star = 1.0;
  const auto grid = make_grid(0.25, 2, 12);
  auto pred = [&](const UncertaintyPoint& q) { return gauge(kBox, q) <= r_star; };
  RunSettings s = settings(grid, 4000, 9);
  s.delta = 0.001;
  const auto r = run_sample_reuse(s, kBox, pred);
  for (const auto& p : r.curve.points) {
    const double truth = p.radius <= r_star ? 1.0 : std::pow(r_star / p.radius, 3);
    EXPECT_LE(p.ci_low, truth) << p.radius;
    EXPECT_GE(p.ci_high, truth) << p.radius;
  }
}

TEST(Engine, WorkerCountDoesNotChangeResults) {
  const auto grid = make_grid(0, 2, 25);
  auto pred = [](const UncertaintyPoint& q) {
    return coordinates(q).sum() < 0.8;
  };
  const auto one = run_sample_reuse(settings(grid, 700, 5, 1), kBox, pred);
  const auto four = run_sample_reuse(settings(grid, 700, 5, 4), kBox, pred);
  EXPECT_EQ(one.tally, four.tally);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(one.curve.points[i].estimate, four.curve.points[i].estimate);
    EXPECT_EQ(one.curve.points[i].fresh, four.curve.points[i].fresh);
  }
  const auto again = run_sample_reuse(settings(grid, 700, 5, 1), kBox, pred);
  EXPECT_EQ(one.tally, again.tally);
  const auto other = run_sample_reuse(settings(grid, 700, 6, 1), kBox, pred);
  EXPECT_NE(one.tally, other.tally);
}

TEST(Engine, ConventionalUsesNPerRadius) {
  const auto grid = make_grid(0.5, 2, 8);
  const auto c = run_conventional(settings(grid, 250, 2, 3), kBox, always_true);
  EXPECT_EQ(c.total_evaluations(), 250u * 8);
  for (const auto& p : c.points) {
    EXPECT_EQ(p.trials, 250u);
  }
}

TEST(Engine, PredicateErrorsPropagate) {
  auto boom = [](const UncertaintyPoint&) -> bool { throw std::runtime_error("boom"); };
  EXPECT_THROW(run_sample_reuse(settings(make_grid(0, 1, 3), 10, 1, 2), kBox, boom),
               std::runtime_error);
}

TEST(Engine, SettingsValidated) {
  EXPECT_THROW(run_sample_reuse(settings(make_grid(0, 1, 3), 0), kBox, always_true),
               ConfigError);
  auto s = settings(make_grid(0, 1, 3), 10);
  s.delta = 1.0;
  EXPECT_THROW(run_sample_reuse(s, kBox, always_true), ConfigError);
}

TEST(LowerBound, SuffixMinimum) {
  const std::vector<double> v{1.0, 0.8, 0.9};
  EXPECT_EQ(suffix_minimum(v), (std::vector<double>{0.8, 0.8, 0.9}));
  const std::vector<double> inc{0.2, 0.5, 0.9};
  EXPECT_EQ(suffix_minimum(inc), inc);
}

TEST(Figures, ClosedFormAndMonotone) {
  const auto table = figure_reuse_curves(caption_configs(), 1, 200);
  ASSERT_EQ(table.factor.size(), 200u);
  EXPECT_LE(table.max_closed_form_gap, 1e-12);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& c = table.configs[k];
    for (std::size_t row = 0; row < 200; ++row) {
      EXPECT_NEAR(table.factor[row][k],
                  oracle::reuse_factor(c.l, c.a, c.b, static_cast<int>(row) + 1),
                  1e-12 * table.factor[row][k]);
      if (row > 0) {
        EXPECT_LE(table.factor[row][k], table.factor[row - 1][k]);
      }
    }
  }
}
