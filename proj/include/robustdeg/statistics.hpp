#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/math/special_functions/beta.hpp>

#include "robustdeg/errors.hpp"

namespace robustdeg {

/// Samples per radius so that |estimate - P| <= epsilon with confidence
/// 1 - delta by the additive Chernoff bound: ceil(ln(2/delta) / (2 eps^2)).
inline std::uint64_t chernoff_sample_size(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta <= 1.0)) {
    throw InvalidArgument("chernoff_sample_size: need epsilon in (0,1), delta in (0,1]");
  }
  return static_cast<std::uint64_t>(
      std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

namespace detail {

// Root of a monotone function on [0, 1] by bisection to 1e-13.
template <class F>
double bisect_unit(F&& increasing, double target) {
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    (increasing(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Exact two-sided (1 - delta) Clopper-Pearson interval for a binomial
/// proportion, inverting the tails through the regularized incomplete beta:
///   Pr[X >= k; p] = I_p(k, n - k + 1),  Pr[X <= k; p] = 1 - I_p(k + 1, n - k).
inline Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                                double delta) {
  if (trials < 1 || successes > trials) {
    throw InvalidArgument("clopper_pearson: need 0 <= successes <= trials, trials >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument("clopper_pearson: delta must lie in (0,1)");
  }
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  const double tail = 0.5 * delta;
  Interval ci;
  if (successes == 0) {
    ci.lo = 0.0;
  } else if (successes == trials) {
    ci.lo = std::pow(tail, 1.0 / n);
  } else {
    ci.lo = detail::bisect_unit(
        [&](double p) { return boost::math::ibeta(k, n - k + 1.0, p); }, tail);
  }
  if (successes == trials) {
    ci.hi = 1.0;
  } else if (successes == 0) {
    ci.hi = 1.0 - std::pow(tail, 1.0 / n);
  } else {
    // Pr[X <= k; p] decreases in p; bisect on its complement.
    ci.hi = detail::bisect_unit(
        [&](double p) { return boost::math::ibeta(k + 1.0, n - k, p); },
        1.0 - tail);
  }
  return ci;
}

}  // namespace robustdeg
