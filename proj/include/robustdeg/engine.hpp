#pragma once

// Robustness degradation curves by sample reuse.
//
// Radii are processed from largest to smallest. A sample drawn uniformly
// from B(r_i) that lands in B(r_s) for a smaller grid radius r_s is also a
// uniform sample of B(r_s), so its evaluation is credited to every row s
// with r_i >= r_s >= gauge(q). Each phase only tops its row up to N trials.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "robustdeg/errors.hpp"
#include "robustdeg/lti.hpp"
#include "robustdeg/rng.hpp"
#include "robustdeg/statistics.hpp"
#include "robustdeg/uncertainty.hpp"

namespace robustdeg {

/// Strictly decreasing radii r_1 > ... > r_l >= 0.
class RadiusGrid {
 public:
  RadiusGrid() = default;

  static RadiusGrid from_radii(std::vector<double> radii) {
    if (radii.empty()) {
      throw InvalidArgument("radius grid must contain at least one radius");
    }
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] >= 0.0) || !std::isfinite(radii[i])) {
        throw InvalidArgument("radii must be finite and >= 0");
      }
      if (i > 0 && !(radii[i] < radii[i - 1])) {
        throw InvalidArgument("radii must be strictly decreasing");
      }
    }
    RadiusGrid g;
    g.radii_ = std::move(radii);
    return g;
  }

  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  double operator[](std::size_t i) const { return radii_[i]; }

  friend bool operator==(const RadiusGrid&, const RadiusGrid&) = default;

 private:
  std::vector<double> radii_;
};

/// r_i = b - (b - a)(i - 1)/(l - 1), i = 1..l: descending from b to a.
inline RadiusGrid make_grid(double a, double b, int l) {
  if (l < 1) {
    throw InvalidArgument("make_grid: l must be >= 1");
  }
  if (!(a >= 0.0) || !(a < b)) {
    throw InvalidArgument("make_grid: need 0 <= a < b");
  }
  if (l == 1) {
    return RadiusGrid::from_radii({b});
  }
  std::vector<double> radii(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) {
    radii[i] = b - (b - a) * i / (l - 1);
  }
  radii.back() = a;
  return RadiusGrid::from_radii(std::move(radii));
}

struct RunSettings {
  std::uint64_t samples_per_radius = 0;  // N
  double delta = 0.01;                   // intervals at level 1 - delta
  RadiusGrid grid;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  // Report successes / N and top the r = 0 row up to N identical trials.
  bool literal_estimator = false;

  void validate() const {
    if (samples_per_radius < 1) {
      throw ConfigError("N must be >= 1", "sampling");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
      throw ConfigError("delta must lie in (0,1)", "delta");
    }
    if (grid.size() == 0) {
      throw ConfigError("radius grid is empty", "grid");
    }
    if (workers < 1) {
      throw ConfigError("workers must be >= 1", "workers");
    }
  }
};

struct TallyRow {
  std::uint64_t trials = 0;     // m_i1
  std::uint64_t successes = 0;  // m_i2
  friend bool operator==(const TallyRow&, const TallyRow&) = default;
};
using TallyMatrix = std::vector<TallyRow>;

struct CurvePoint {
  double radius = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t fresh = 0;  // predicate evaluations performed in this phase
};

struct DegradationCurve {
  std::uint64_t samples_per_radius = 0;
  double delta = 0.01;
  std::vector<CurvePoint> points;

  std::uint64_t total_evaluations() const {
    std::uint64_t total = 0;
    for (const auto& p : points) {
      total += p.fresh;
    }
    return total;
  }
};

struct ReuseReport {
  int dimension = 0;
  double theoretical_factor = 1.0;
  double empirical_factor = 1.0;
  std::vector<double> expected_fresh;
  std::vector<std::uint64_t> observed_fresh;
  std::uint64_t total_evaluations = 0;
  std::uint64_t degenerate_evaluations = 0;
};

struct ReuseResult {
  DegradationCurve curve;
  ReuseReport report;
  TallyMatrix tally;
};

// ---------------------------------------------------------------------------
// Efficiency accounting

/// l / (l - sum_{i>=2} (r_i / r_{i-1})^d).
inline double theoretical_reuse_factor(const RadiusGrid& grid, int d) {
  if (grid.size() == 0) {
    throw InvalidArgument("theoretical_reuse_factor: empty grid");
  }
  if (d < 1) {
    throw InvalidArgument("theoretical_reuse_factor: d must be >= 1");
  }
  const auto& r = grid.radii();
  double reused = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    reused += std::pow(r[i] / r[i - 1], d);
  }
  const double l = static_cast<double>(r.size());
  return l / (l - reused);
}

/// Expected fresh samples in phase `row` (0-based): N for the first row,
/// N (1 - (r_row / r_{row-1})^d) afterwards.
inline double expected_fresh(const RadiusGrid& grid, int d, std::size_t row,
                             std::uint64_t samples_per_radius) {
  if (row >= grid.size()) {
    throw InvalidArgument("expected_fresh: row index out of range");
  }
  const double n = static_cast<double>(samples_per_radius);
  if (row == 0) {
    return n;
  }
  return n * (1.0 - std::pow(grid[row] / grid[row - 1], d));
}

/// N l / sum of fresh evaluations.
inline double empirical_reuse_factor(const DegradationCurve& curve) {
  const auto total = curve.total_evaluations();
  if (total == 0) {
    return 1.0;
  }
  return static_cast<double>(curve.samples_per_radius) *
         static_cast<double>(curve.points.size()) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Monte Carlo phases

namespace detail {

inline std::uint64_t reuse_stream(std::uint64_t phase, std::uint64_t draw) {
  return phase << 40 | draw;
}

inline std::uint64_t conventional_stream(std::uint64_t phase, std::uint64_t draw) {
  return std::uint64_t{1} << 63 | phase << 40 | draw;
}

// Range-increment accumulator over tally rows.
struct TallyDelta {
  std::vector<std::int64_t> trials;
  std::vector<std::int64_t> successes;

  explicit TallyDelta(std::size_t rows) : trials(rows + 1, 0), successes(rows + 1, 0) {}

  void credit(std::size_t first, std::size_t last_exclusive, bool success) {
    ++trials[first];
    --trials[last_exclusive];
    if (success) {
      ++successes[first];
      --successes[last_exclusive];
    }
  }

  void apply(TallyMatrix& tally) const {
    std::int64_t t = 0, s = 0;
    for (std::size_t i = 0; i < tally.size(); ++i) {
      t += trials[i];
      s += successes[i];
      tally[i].trials += static_cast<std::uint64_t>(t);
      tally[i].successes += static_cast<std::uint64_t>(s);
    }
  }

  void merge(const TallyDelta& other) {
    for (std::size_t i = 0; i < trials.size(); ++i) {
      trials[i] += other.trials[i];
      successes[i] += other.successes[i];
    }
  }
};

// Draws `count` samples from B(radii[row]) on streams stream_of(draw) and
// credits rows row..j with radii[j] >= gauge (all of them when `reuse`).
template <class Predicate, class StreamOf>
TallyDelta run_phase(const UncertaintySet& set, std::span<const double> radii,
                     std::size_t row, std::uint64_t count, bool reuse,
                     std::uint64_t seed, unsigned workers, StreamOf stream_of,
                     const Predicate& predicate) {
  const double radius = radii[row];
  auto work = [&](std::uint64_t begin, std::uint64_t end, TallyDelta& delta) {
    for (std::uint64_t draw = begin; draw < end; ++draw) {
      CounterRng rng(seed, stream_of(draw));
      const UncertaintyPoint q = sample_uniform(set, radius, rng);
      const bool ok = static_cast<bool>(predicate(q));
      std::size_t last = row + 1;
      if (reuse) {
        // q lies in B(radius) by construction; clamp rounding noise.
        const double g = std::min(gauge(set, q), radius);
        const auto it = std::partition_point(
            radii.begin() + static_cast<std::ptrdiff_t>(row), radii.end(),
            [g](double r) { return r >= g; });
        last = static_cast<std::size_t>(it - radii.begin());
      }
      delta.credit(row, last, ok);
    }
  };

  TallyDelta total(radii.size());
  const unsigned used = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(count, 1)));
  if (used <= 1) {
    work(0, count, total);
    return total;
  }
  std::vector<TallyDelta> partial(used, TallyDelta(radii.size()));
  std::vector<std::exception_ptr> errors(used);
  {
    std::vector<std::jthread> threads;
    threads.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
      const std::uint64_t begin = count * w / used;
      const std::uint64_t end = count * (w + 1) / used;
      threads.emplace_back([&, w, begin, end] {
        try {
          work(begin, end, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  for (const auto& p : partial) {
    total.merge(p);
  }
  return total;
}

inline DegradationCurve make_curve(const RunSettings& settings,
                                   const TallyMatrix& tally,
                                   const std::vector<std::uint64_t>& fresh) {
  DegradationCurve curve;
  curve.samples_per_radius = settings.samples_per_radius;
  curve.delta = settings.delta;
  const auto n = settings.samples_per_radius;
  for (std::size_t i = 0; i < tally.size(); ++i) {
    CurvePoint p;
    p.radius = settings.grid[i];
    p.trials = tally[i].trials;
    p.successes = tally[i].successes;
    p.fresh = fresh[i];
    if (settings.literal_estimator) {
      const auto k = std::min(p.successes, n);
      p.estimate = static_cast<double>(p.successes) / static_cast<double>(n);
      const auto ci = clopper_pearson(k, n, settings.delta);
      p.ci_low = ci.lo;
      p.ci_high = ci.hi;
    } else if (p.radius == 0.0) {
      // B(0) is the center alone, so P(0) is known exactly.
      p.estimate = p.successes > 0 ? 1.0 : 0.0;
      p.ci_low = p.ci_high = p.estimate;
    } else {
      p.estimate = static_cast<double>(p.successes) / static_cast<double>(p.trials);
      const auto ci = clopper_pearson(p.successes, p.trials, settings.delta);
      p.ci_low = ci.lo;
      p.ci_high = ci.hi;
    }
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace detail

/// Sample Reuse Algorithm over an arbitrary thread-safe predicate
/// `bool(const UncertaintyPoint&)`.
template <class Predicate>
ReuseResult run_sample_reuse(const RunSettings& settings,
                             const UncertaintySet& set,
                             const Predicate& predicate) {
  settings.validate();
  const auto& radii = settings.grid.radii();
  const std::size_t l = radii.size();
  const std::uint64_t n = settings.samples_per_radius;

  ReuseResult result;
  result.tally.assign(l, TallyRow{});
  std::vector<std::uint64_t> fresh(l, 0);

  for (std::size_t i = 0; i < l; ++i) {
    const std::uint64_t entry = result.tally[i].trials;
    std::uint64_t need = entry < n ? n - entry : 0;
    if (radii[i] == 0.0 && !settings.literal_estimator) {
      // B(0) is a single point: one evaluation decides the row.
      need = entry >= 1 ? 0 : 1;
    }
    if (need > 0) {
      const auto delta = detail::run_phase(
          set, radii, i, need, true, settings.seed, settings.workers,
          [i](std::uint64_t draw) { return detail::reuse_stream(i, draw); },
          predicate);
      delta.apply(result.tally);
    }
    fresh[i] = need;
  }

  result.curve = detail::make_curve(settings, result.tally, fresh);
  auto& report = result.report;
  report.dimension = dimension(set);
  report.theoretical_factor = theoretical_reuse_factor(settings.grid, report.dimension);
  report.empirical_factor = empirical_reuse_factor(result.curve);
  report.observed_fresh = fresh;
  report.total_evaluations = result.curve.total_evaluations();
  for (std::size_t i = 0; i < l; ++i) {
    report.expected_fresh.push_back(
        expected_fresh(settings.grid, report.dimension, i, n));
  }
  return result;
}

/// Independent N-sample estimate at every radius; N l evaluations.
template <class Predicate>
DegradationCurve run_conventional(const RunSettings& settings,
                                  const UncertaintySet& set,
                                  const Predicate& predicate) {
  settings.validate();
  const auto& radii = settings.grid.radii();
  const std::uint64_t n = settings.samples_per_radius;
  TallyMatrix tally(radii.size());
  std::vector<std::uint64_t> fresh(radii.size(), n);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto delta = detail::run_phase(
        set, radii, i, n, false, settings.seed, settings.workers,
        [i](std::uint64_t draw) { return detail::conventional_stream(i, draw); },
        predicate);
    delta.apply(tally);
  }
  return detail::make_curve(settings, tally, fresh);
}

/// A complete experiment against an uncertain closed loop.
struct EngineConfig {
  RunSettings run;
  UncertaintySet set;
  UncertainSystem system;
  RobustnessSpec spec;
};

inline ReuseResult run_sample_reuse(const EngineConfig& config) {
  std::atomic<std::uint64_t> degenerate{0};
  auto predicate = [&](const UncertaintyPoint& q) {
    const Outcome o = evaluate_outcome(config.spec, config.system, q);
    if (o == Outcome::Degenerate) {
      degenerate.fetch_add(1, std::memory_order_relaxed);
    }
    return o == Outcome::Satisfied;
  };
  auto result = run_sample_reuse(config.run, config.set, predicate);
  result.report.degenerate_evaluations = degenerate.load();
  return result;
}

inline DegradationCurve run_conventional(const EngineConfig& config) {
  return run_conventional(config.run, config.set,
                          [&](const UncertaintyPoint& q) {
                            return evaluate(config.spec, config.system, q);
                          });
}

// ---------------------------------------------------------------------------
// Lower bound on the conditional probability for radially nonincreasing
// uncertainty densities: Pr{P | Delta in B(r)} >= inf_{rho <= r} P(rho).

/// out[i] = min(values[i..end]).
inline std::vector<double> suffix_minimum(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  for (std::size_t i = out.size(); i-- > 1;) {
    out[i - 1] = std::min(out[i - 1], out[i]);
  }
  return out;
}

struct LowerBoundCurve {
  std::vector<double> bound;
  // True when the smallest sampled radius is positive, so the infimum only
  // covers sampled radii.
  bool restricted_to_sampled = false;
};

/// Running minimum of the lower confidence limits over all sampled rho <= r.
inline LowerBoundCurve lower_bound_curve(const DegradationCurve& curve) {
  std::vector<double> lows;
  lows.reserve(curve.points.size());
  for (const auto& p : curve.points) {
    lows.push_back(p.ci_low);
  }
  LowerBoundCurve out;
  out.bound = suffix_minimum(lows);
  out.restricted_to_sampled =
      !curve.points.empty() && curve.points.back().radius > 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Reuse factor versus dimension on linspace grids

struct ReuseFigureConfig {
  std::string label;
  int l = 2;
  double a = 0.0;
  double b = 1.0;
};

/// The four grid configurations of the reuse-factor figures: A l=200, b=2a;
/// B l=100, b=2a; C l=100, a=0; D l=20, b=2a.
inline std::vector<ReuseFigureConfig> caption_configs() {
  return {{"A", 200, 1.0, 2.0},
          {"B", 100, 1.0, 2.0},
          {"C", 100, 0.0, 1.0},
          {"D", 20, 1.0, 2.0}};
}

/// Closed form of the reuse factor on the linspace grid, where
/// r_i / r_{i-1} = 1 - 1 / ((l-1)/(1 - a/b) - i + 2).
inline double linspace_reuse_factor(int l, double a, double b, int d) {
  double reused = 0.0;
  const double span = (l - 1) / (1.0 - a / b);
  for (int i = 2; i <= l; ++i) {
    reused += std::pow(1.0 - 1.0 / (span - i + 2), d);
  }
  return l / (l - reused);
}

struct ReuseFigureTable {
  std::vector<ReuseFigureConfig> configs;
  std::vector<int> dimensions;
  std::vector<std::vector<double>> factor;  // [dimension row][config]
  double max_closed_form_gap = 0.0;  // relative
};

inline constexpr double kClosedFormTolerance = 1e-12;

/// Reuse factor for each config and d in [d_min, d_max], evaluated on the
/// grid itself and cross-checked against the closed form (relative 1e-12).
inline ReuseFigureTable figure_reuse_curves(std::vector<ReuseFigureConfig> configs,
                                            int d_min, int d_max) {
  if (d_min < 1 || d_max < d_min) {
    throw InvalidArgument("figure_reuse_curves: need 1 <= d_min <= d_max");
  }
  ReuseFigureTable table;
  table.configs = std::move(configs);
  std::vector<RadiusGrid> grids;
  for (const auto& c : table.configs) {
    grids.push_back(make_grid(c.a, c.b, c.l));
  }
  for (int d = d_min; d <= d_max; ++d) {
    table.dimensions.push_back(d);
    auto& row = table.factor.emplace_back();
    for (std::size_t k = 0; k < table.configs.size(); ++k) {
      const auto& c = table.configs[k];
      const double direct = theoretical_reuse_factor(grids[k], d);
      const double closed = linspace_reuse_factor(c.l, c.a, c.b, d);
      table.max_closed_form_gap = std::max(table.max_closed_form_gap,
                                           std::abs(direct - closed) / direct);
      row.push_back(direct);
    }
  }
  if (table.max_closed_form_gap > kClosedFormTolerance) {
    throw std::logic_error("reuse factor closed form disagrees with grid sum");
  }
  return table;
}

}  // namespace robustdeg
