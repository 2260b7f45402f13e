#pragma once

// Random matrices uniform over spectral-norm balls, plus the factor samplers
// they are built from.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "robustdeg/errors.hpp"
#include "robustdeg/rng.hpp"

namespace robustdeg {

inline constexpr std::uint64_t kRejectionCap = 10'000'000;

/// Largest singular value via the dominant eigenvalue of the smaller
/// Hermitian Gram product. Intended for the small blocks used here.
template <class Derived>
double max_singular_value(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (a.size() == 0) {
    throw InvalidArgument("max_singular_value: empty matrix");
  }
  const Mat gram = a.rows() >= a.cols() ? Mat(a.adjoint() * a)
                                        : Mat(a * a.adjoint());
  if (gram.rows() == 1) {
    return std::sqrt(std::abs(gram(0, 0)));
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

/// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the
/// phases of diag(R) folded back into Q.
template <class Rng>
Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 1) {
    throw InvalidArgument("haar_unitary: n must be >= 1");
  }
  Eigen::MatrixXcd z(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      z(i, j) = std::complex<double>(re, im) * (1.0 / std::numbers::sqrt2);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) {
      q.col(j) *= d / mag;
    }
  }
  return q;
}

/// Joint density of the singular values of a matrix uniform over the unit
/// complex spectral ball in C^{m x n}, m >= n:
///
///   Upsilon_C * prod_i s_i^{2(m-n)+1} * prod_{i<k} (s_i^2 - s_k^2)^2
///
/// on 1 >= s_1 > ... > s_n > 0, with
/// Upsilon_C = 2^n pi^{mn} / prod_{k=1..n} (n-k)! (m-k)!.
class SingularValueDensity {
 public:
  SingularValueDensity(int m, int n) : m_(m), n_(n) {
    if (n < 1 || m < n) {
      throw InvalidArgument("SingularValueDensity: need m >= n >= 1");
    }
    double log_denominator = 0.0;
    for (int k = 1; k <= n; ++k) {
      log_denominator += std::lgamma(n - k + 1.0) + std::lgamma(m - k + 1.0);
    }
    normalization_ = std::exp(n * std::log(2.0) +
                              m * n * std::log(std::numbers::pi) -
                              log_denominator);
    envelope_ = 1.5 * locate_maximum();
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  double normalization() const { return normalization_; }
  // Constant M of the rejection envelope M * uniform(ordered region).
  double envelope() const { return envelope_; }

  // Unnormalized density; zero outside the ordered unit region.
  double operator()(std::span<const double> s) const {
    const int exponent = 2 * (m_ - n_) + 1;
    double value = 1.0;
    for (int i = 0; i < n_; ++i) {
      if (s[i] <= 0.0 || s[i] > 1.0 || (i > 0 && s[i] >= s[i - 1])) {
        return 0.0;
      }
      value *= std::pow(s[i], exponent);
    }
    for (int i = 0; i < n_; ++i) {
      for (int k = i + 1; k < n_; ++k) {
        const double gap = s[i] * s[i] - s[k] * s[k];
        value *= gap * gap;
      }
    }
    return value;
  }

 private:
  double locate_maximum() const {
    const double step = n_ <= 2 ? 0.01 : 0.05;
    const int ticks = static_cast<int>(std::lround(1.0 / step));
    std::vector<int> idx(n_);
    std::vector<double> s(n_), best(n_);
    double best_value = -1.0;
    // Enumerate strictly decreasing index tuples ticks >= i_1 > ... > i_n >= 1.
    auto recurse = [&](auto&& self, int pos, int upper) -> void {
      if (pos == n_) {
        for (int i = 0; i < n_; ++i) {
          s[i] = idx[i] * step;
        }
        const double v = (*this)(s);
        if (v > best_value) {
          best_value = v;
          best = s;
        }
        return;
      }
      for (int i = upper; i >= n_ - pos; --i) {
        idx[pos] = i;
        self(self, pos + 1, i - 1);
      }
    };
    recurse(recurse, 0, ticks);
    if (n_ <= 2) {
      return best_value;
    }
    // Coordinate-ascent polish: golden-section search per coordinate inside
    // the interval allowed by its neighbours.
    constexpr double kGolden = 0.6180339887498949;
    for (int sweep = 0; sweep < 30; ++sweep) {
      for (int i = 0; i < n_; ++i) {
        double lo = i + 1 < n_ ? best[i + 1] : 0.0;
        double hi = i > 0 ? best[i - 1] : 1.0;
        auto at = [&](double x) {
          std::vector<double> trial = best;
          trial[i] = x;
          return (*this)(trial);
        };
        double x1 = hi - kGolden * (hi - lo);
        double x2 = lo + kGolden * (hi - lo);
        double f1 = at(x1), f2 = at(x2);
        for (int it = 0; it < 60; ++it) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = at(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = at(x1);
          }
        }
        const double x = 0.5 * (lo + hi);
        if (at(x) > best_value) {
          best[i] = x;
          best_value = at(x);
        }
      }
    }
    return best_value;
  }

  int m_;
  int n_;
  double normalization_ = 0.0;
  double envelope_ = 0.0;
};

/// Shared, lazily built densities keyed by (m, n).
inline std::shared_ptr<const SingularValueDensity> singular_value_density(
    int m, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>,
                  std::shared_ptr<const SingularValueDensity>>
      cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{m, n}];
  if (!slot) {
    slot = std::make_shared<const SingularValueDensity>(m, n);
  }
  return slot;
}

/// Draws descending singular values from `density` by rejection against a
/// constant envelope over the ordered unit region.
template <class Rng>
std::vector<double> sample_singular_values(const SingularValueDensity& density,
                                           Rng& rng) {
  const int n = density.cols();
  std::vector<double> s(n);
  for (std::uint64_t it = 1; it <= kRejectionCap; ++it) {
    for (auto& v : s) {
      v = uniform_open01(rng);
    }
    std::sort(s.begin(), s.end(), std::greater<>());
    if (uniform_open01(rng) * density.envelope() < density(s)) {
      return s;
    }
  }
  throw ResourceExhausted("singular value sampler exceeded iteration cap",
                          0.0);
}

template <class Rng>
std::vector<double> sample_singular_values(int m, int n, Rng& rng) {
  return sample_singular_values(*singular_value_density(m, n), rng);
}

/// Uniform over {X in C^{m x n} : sigma_max(X) <= r}.
template <class Rng>
Eigen::MatrixXcd sample_complex_full_block(int m, int n, double r, Rng& rng) {
  if (m < 1 || n < 1 || !(r > 0.0)) {
    throw InvalidArgument("complex full block needs m, n >= 1 and r > 0");
  }
  if (m < n) {
    return sample_complex_full_block(n, m, r, rng).adjoint();
  }
  const auto sigma = sample_singular_values(m, n, rng);
  const Eigen::MatrixXcd u = haar_unitary(m, rng);
  const Eigen::MatrixXcd v = haar_unitary(n, rng);
  Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(sigma.data(), n);
  return r * u.leftCols(n) * s.cast<std::complex<double>>().asDiagonal() *
         v.adjoint();
}

/// Uniform over {X in R^{m x n} : sigma_max(X) <= r} by rejection from the
/// box [-r, r]^{mn}, which contains the ball. Limited to m*n <= 9.
template <class Rng>
Eigen::MatrixXd sample_real_full_block(int m, int n, double r, Rng& rng) {
  if (m < 1 || n < 1 || !(r > 0.0)) {
    throw InvalidArgument("real full block needs m, n >= 1 and r > 0");
  }
  if (m * n > 9) {
    throw Unsupported("real full blocks are limited to 9 entries");
  }
  Eigen::MatrixXd x(m, n);
  for (std::uint64_t it = 1; it <= kRejectionCap; ++it) {
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      x.data()[k] = uniform_symmetric(rng, 1.0);
    }
    if (max_singular_value(x) <= 1.0) {
      return r * x;
    }
  }
  throw ResourceExhausted(
      "real full block rejection exceeded " + std::to_string(kRejectionCap) +
          " iterations (acceptance rate below 1e-7)",
      1.0 / static_cast<double>(kRejectionCap));
}

}  // namespace robustdeg
