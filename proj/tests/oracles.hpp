#pragma once

// Reference computations used only by the tests. They deliberately avoid
// the library code paths they are compared against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

// Pr[X >= k], X ~ Bin(n, p), by direct summation of the pmf.
inline double binomial_upper_tail(int k, int n, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  double sum = 0.0;
  for (int j = k; j <= n; ++j) {
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) -
                           std::lgamma(n - j + 1.0) + j * std::log(p) +
                           (n - j) * std::log1p(-p);
    sum += std::exp(log_pmf);
  }
  return sum;
}

inline double binomial_lower_tail(int k, int n, double p) {
  return 1.0 - binomial_upper_tail(k + 1, n, p);
}

// Exact two-sided interval by bisection on the tail sums.
inline std::pair<double, double> clopper_pearson(int k, int n, double delta) {
  double lo = 0.0, hi = 1.0;
  if (k > 0) {
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      (binomial_upper_tail(k, n, m) < delta / 2 ? a : b) = m;
    }
    lo = 0.5 * (a + b);
  }
  if (k < n) {
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      (binomial_lower_tail(k, n, m) > delta / 2 ? a : b) = m;
    }
    hi = 0.5 * (a + b);
  }
  return {lo, hi};
}

// l / (l - sum (r_i / r_{i-1})^d) on r_i = b - (b - a)(i - 1)/(l - 1).
inline double reuse_factor(int l, double a, double b, int d) {
  double sum = 0.0;
  for (int i = 2; i <= l; ++i) {
    const double prev = b - (b - a) * (i - 2) / (l - 1);
    const double cur = b - (b - a) * (i - 1) / (l - 1);
    sum += std::pow(cur / prev, d);
  }
  return l / (l - sum);
}

// Peak of |G(jw)| on a dense log grid, refined by golden section.
template <class G>
double peak_gain(const G& g, double w_lo, double w_hi, int points) {
  double best = 0.0, best_w = w_lo;
  for (int k = 0; k < points; ++k) {
    const double w = w_lo * std::pow(w_hi / w_lo, k / (points - 1.0));
    const double m = std::abs(g(std::complex<double>(0.0, w)));
    if (m > best) {
      best = m;
      best_w = w;
    }
  }
  const double step = std::pow(w_hi / w_lo, 1.0 / (points - 1.0));
  double a = best_w / step, b = best_w * step;
  const double phi = 0.6180339887498949;
  for (int it = 0; it < 200; ++it) {
    const double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    if (std::abs(g({0.0, x1})) < std::abs(g({0.0, x2}))) {
      a = x1;
    } else {
      b = x2;
    }
  }
  return std::max(best, std::abs(g({0.0, 0.5 * (a + b)})));
}

}  // namespace oracle
