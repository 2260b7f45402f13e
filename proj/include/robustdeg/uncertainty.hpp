#pragma once

// Uncertainty sets B(r), their gauge (Minkowski functional), the volume
// scaling exponent d with vol(B(r)) = vol(B(1)) r^d, and exact uniform
// samplers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "robustdeg/errors.hpp"
#include "robustdeg/matrix_sampling.hpp"
#include "robustdeg/rng.hpp"

namespace robustdeg {

enum class BlockKind { RealScalar, ComplexScalar, RealFull, ComplexFull };

inline const char* to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::RealScalar: return "real-scalar";
    case BlockKind::ComplexScalar: return "complex-scalar";
    case BlockKind::RealFull: return "real-full";
    case BlockKind::ComplexFull: return "complex-full";
  }
  return "?";
}

inline bool is_scalar(BlockKind kind) {
  return kind == BlockKind::RealScalar || kind == BlockKind::ComplexScalar;
}

/// One diagonal block of a structured perturbation: a scalar q I_multiplicity
/// or a full rows x cols matrix. Full blocks are never repeated.
struct BlockSpec {
  BlockKind kind = BlockKind::RealScalar;
  int rows = 1;
  int cols = 1;
  int multiplicity = 1;

  static BlockSpec scalar(BlockKind kind, int multiplicity = 1) {
    return {kind, 1, 1, multiplicity};
  }
  static BlockSpec full(BlockKind kind, int rows, int cols) {
    return {kind, rows, cols, 1};
  }

  void validate() const {
    if (is_scalar(kind)) {
      if (rows != 1 || cols != 1 || multiplicity < 1) {
        throw InvalidArgument(
            "scalar block needs 1x1 shape and multiplicity >= 1");
      }
    } else if (rows < 1 || cols < 1 || multiplicity != 1) {
      throw InvalidArgument(
          "full block needs rows, cols >= 1 and multiplicity 1");
    }
  }

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

/// {x in R^n : ||x||_p <= r}, p a positive integer or infinity.
class LpBall {
 public:
  LpBall(double p, int n) : p_(p), n_(n) {
    if (n < 1) {
      throw InvalidArgument("LpBall: n must be >= 1");
    }
    if (!(std::isinf(p) && p > 0) && !(p >= 1.0 && p == std::floor(p))) {
      throw InvalidArgument("LpBall: p must be a positive integer or inf");
    }
  }
  double p() const { return p_; }
  int n() const { return n_; }
  bool is_box() const { return std::isinf(p_); }

  friend bool operator==(const LpBall&, const LpBall&) = default;

 private:
  double p_;
  int n_;
};

/// Block-diagonal perturbations with sigma_max <= r.
class SpectralBall {
 public:
  explicit SpectralBall(std::vector<BlockSpec> blocks)
      : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
      throw InvalidArgument("SpectralBall: at least one block required");
    }
    for (const auto& b : blocks_) {
      b.validate();
    }
  }
  const std::vector<BlockSpec>& blocks() const { return blocks_; }

  friend bool operator==(const SpectralBall&, const SpectralBall&) = default;

 private:
  std::vector<BlockSpec> blocks_;
};

/// Homogeneous star-shaped set about an interior point of a simplex Q:
/// B(r) = { center + r (x - center) : x in Q }.
class StarSimplex {
 public:
  StarSimplex(std::vector<Eigen::VectorXd> vertices, Eigen::VectorXd center)
      : vertices_(std::move(vertices)), center_(std::move(center)) {
    const auto n = static_cast<Eigen::Index>(center_.size());
    if (n < 1 || vertices_.size() != static_cast<std::size_t>(n + 1)) {
      throw InvalidArgument("StarSimplex: need n+1 vertices in R^n");
    }
    Eigen::MatrixXd lifted(n + 1, n + 1);
    for (Eigen::Index k = 0; k <= n; ++k) {
      if (vertices_[k].size() != n) {
        throw InvalidArgument("StarSimplex: vertex dimension mismatch");
      }
      lifted.col(k).head(n) = vertices_[k];
      lifted(n, k) = 1.0;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lifted);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) {
      throw InvalidArgument("StarSimplex: vertices are affinely dependent");
    }
    to_barycentric_ = lu.inverse();
    center_weights_ = barycentric(center_);
    if ((center_weights_.array() <= 0.0).any()) {
      throw InvalidArgument("StarSimplex: center must be strictly interior");
    }
  }

  /// Simplex with its vertex centroid as center.
  static StarSimplex about_centroid(std::vector<Eigen::VectorXd> vertices) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(vertices.at(0).size());
    for (const auto& v : vertices) {
      c += v;
    }
    c /= static_cast<double>(vertices.size());
    return StarSimplex(std::move(vertices), std::move(c));
  }

  int n() const { return static_cast<int>(center_.size()); }
  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  const Eigen::VectorXd& center() const { return center_; }
  const Eigen::VectorXd& center_weights() const { return center_weights_; }

  Eigen::VectorXd barycentric(const Eigen::VectorXd& x) const {
    Eigen::VectorXd lifted(x.size() + 1);
    lifted << x, 1.0;
    return to_barycentric_ * lifted;
  }

  friend bool operator==(const StarSimplex& a, const StarSimplex& b) {
    return a.vertices_ == b.vertices_ && a.center_ == b.center_;
  }

 private:
  std::vector<Eigen::VectorXd> vertices_;
  Eigen::VectorXd center_;
  Eigen::MatrixXd to_barycentric_;
  Eigen::VectorXd center_weights_;
};

using UncertaintySet = std::variant<LpBall, SpectralBall, StarSimplex>;

using BlockValue =
    std::variant<double, std::complex<double>, Eigen::MatrixXd,
                 Eigen::MatrixXcd>;
using BlockValues = std::vector<BlockValue>;
/// A vector for l_p balls and star-shaped sets, per-block values otherwise.
using UncertaintyPoint = std::variant<Eigen::VectorXd, BlockValues>;

namespace detail {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline const Eigen::VectorXd& as_vector(const UncertaintyPoint& point,
                                        Eigen::Index n) {
  const auto* v = std::get_if<Eigen::VectorXd>(&point);
  if (v == nullptr || v->size() != n) {
    throw InvalidArgument("uncertainty point shape does not match set");
  }
  return *v;
}

inline double block_gauge(const BlockSpec& spec, const BlockValue& value) {
  switch (spec.kind) {
    case BlockKind::RealScalar:
      if (const auto* q = std::get_if<double>(&value)) {
        return std::abs(*q);
      }
      break;
    case BlockKind::ComplexScalar:
      if (const auto* q = std::get_if<std::complex<double>>(&value)) {
        return std::abs(*q);
      }
      break;
    case BlockKind::RealFull:
      if (const auto* m = std::get_if<Eigen::MatrixXd>(&value);
          m != nullptr && m->rows() == spec.rows && m->cols() == spec.cols) {
        return max_singular_value(*m);
      }
      break;
    case BlockKind::ComplexFull:
      if (const auto* m = std::get_if<Eigen::MatrixXcd>(&value);
          m != nullptr && m->rows() == spec.rows && m->cols() == spec.cols) {
        return max_singular_value(*m);
      }
      break;
  }
  throw InvalidArgument("block value does not match block spec");
}

inline const BlockValues& as_blocks(const UncertaintyPoint& point,
                                    const SpectralBall& ball) {
  const auto* v = std::get_if<BlockValues>(&point);
  if (v == nullptr || v->size() != ball.blocks().size()) {
    throw InvalidArgument("uncertainty point shape does not match set");
  }
  return *v;
}

}  // namespace detail

inline double lp_norm(const Eigen::VectorXd& x, double p) {
  if (std::isinf(p)) {
    return x.cwiseAbs().maxCoeff();
  }
  if (p == 1.0) {
    return x.cwiseAbs().sum();
  }
  if (p == 2.0) {
    return x.norm();
  }
  return std::pow(x.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

/// Smallest r with point in B(r).
inline double gauge(const UncertaintySet& set, const UncertaintyPoint& point) {
  return std::visit(
      detail::Overloaded{
          [&](const LpBall& b) {
            return lp_norm(detail::as_vector(point, b.n()), b.p());
          },
          [&](const SpectralBall& b) {
            const auto& values = detail::as_blocks(point, b);
            double g = 0.0;
            for (std::size_t k = 0; k < values.size(); ++k) {
              g = std::max(g, detail::block_gauge(b.blocks()[k], values[k]));
            }
            return g;
          },
          [&](const StarSimplex& s) {
            const Eigen::VectorXd lambda =
                s.barycentric(detail::as_vector(point, s.n()));
            const Eigen::VectorXd& lambda0 = s.center_weights();
            double g = 0.0;
            for (Eigen::Index k = 0; k < lambda.size(); ++k) {
              g = std::max(g, 1.0 - lambda[k] / lambda0[k]);
            }
            return g;
          }},
      set);
}

/// Volume-scaling exponent. Scalar blocks contribute 1 (real) or 2
/// (complex) whatever their multiplicity; full blocks contribute mn or 2mn.
inline int dimension(const UncertaintySet& set) {
  return std::visit(
      detail::Overloaded{
          [](const LpBall& b) { return b.n(); },
          [](const StarSimplex& s) { return s.n(); },
          [](const SpectralBall& b) {
            int d = 0;
            for (const auto& block : b.blocks()) {
              switch (block.kind) {
                case BlockKind::RealScalar: d += 1; break;
                case BlockKind::ComplexScalar: d += 2; break;
                case BlockKind::RealFull: d += block.rows * block.cols; break;
                case BlockKind::ComplexFull:
                  d += 2 * block.rows * block.cols;
                  break;
              }
            }
            return d;
          }},
      set);
}

/// Number of real coordinates in `coordinates(point)` for points of `set`.
inline int coordinate_count(const UncertaintySet& set) {
  return std::visit(
      detail::Overloaded{
          [](const LpBall& b) { return b.n(); },
          [](const StarSimplex& s) { return s.n(); },
          [](const SpectralBall& b) {
            int count = 0;
            for (const auto& block : b.blocks()) {
              const int entries = block.rows * block.cols;
              const bool complex = block.kind == BlockKind::ComplexScalar ||
                                   block.kind == BlockKind::ComplexFull;
              count += complex ? 2 * entries : entries;
            }
            return count;
          }},
      set);
}

/// Real coordinates of a point. Block values are flattened in block order;
/// matrices column-major; complex numbers as (re, im) pairs.
inline Eigen::VectorXd coordinates(const UncertaintyPoint& point) {
  if (const auto* v = std::get_if<Eigen::VectorXd>(&point)) {
    return *v;
  }
  std::vector<double> out;
  auto push_complex = [&](std::complex<double> z) {
    out.push_back(z.real());
    out.push_back(z.imag());
  };
  for (const auto& value : std::get<BlockValues>(point)) {
    std::visit(detail::Overloaded{
                   [&](double q) { out.push_back(q); },
                   [&](std::complex<double> q) { push_complex(q); },
                   [&](const Eigen::MatrixXd& m) {
                     out.insert(out.end(), m.data(), m.data() + m.size());
                   },
                   [&](const Eigen::MatrixXcd& m) {
                     for (Eigen::Index k = 0; k < m.size(); ++k) {
                       push_complex(m.data()[k]);
                     }
                   }},
               value);
  }
  return Eigen::Map<Eigen::VectorXd>(out.data(),
                                     static_cast<Eigen::Index>(out.size()));
}

/// The single point of B(0).
inline UncertaintyPoint center(const UncertaintySet& set) {
  return std::visit(
      detail::Overloaded{
          [](const LpBall& b) -> UncertaintyPoint {
            return Eigen::VectorXd(Eigen::VectorXd::Zero(b.n()));
          },
          [](const StarSimplex& s) -> UncertaintyPoint { return s.center(); },
          [](const SpectralBall& b) -> UncertaintyPoint {
            BlockValues values;
            for (const auto& block : b.blocks()) {
              switch (block.kind) {
                case BlockKind::RealScalar: values.emplace_back(0.0); break;
                case BlockKind::ComplexScalar:
                  values.emplace_back(std::complex<double>{});
                  break;
                case BlockKind::RealFull:
                  values.emplace_back(
                      Eigen::MatrixXd(Eigen::MatrixXd::Zero(block.rows,
                                                            block.cols)));
                  break;
                case BlockKind::ComplexFull:
                  values.emplace_back(
                      Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(block.rows,
                                                              block.cols)));
                  break;
              }
            }
            return values;
          }},
      set);
}

/// vol(B(r_small)) / vol(B(r_large)) = (r_small / r_large)^d.
inline double volume_ratio(const UncertaintySet& set, double r_small,
                           double r_large) {
  if (!(r_large > 0.0) || r_small < 0.0 || r_small > r_large) {
    throw InvalidArgument("volume_ratio: need 0 <= r_small <= r_large, r_large > 0");
  }
  return std::pow(r_small / r_large, dimension(set));
}

namespace detail {

template <class Rng>
Eigen::VectorXd sample_lp(const LpBall& ball, double r, Rng& rng) {
  const int n = ball.n();
  Eigen::VectorXd x(n);
  if (ball.is_box()) {
    for (int i = 0; i < n; ++i) {
      x[i] = uniform_symmetric(rng, r);
    }
    return x;
  }
  // Generalized Gaussian directions: density ~ exp(-|x|^p) per coordinate.
  const double p = ball.p();
  for (int i = 0; i < n; ++i) {
    const double g = standard_gamma(rng, 1.0 / p);
    const double sign = (rng() & 1u) != 0 ? 1.0 : -1.0;
    x[i] = sign * std::pow(g, 1.0 / p);
  }
  const double norm = lp_norm(x, p);
  const double radius = r * std::pow(uniform_open01(rng), 1.0 / n);
  return x * (radius / norm);
}

template <class Rng>
Eigen::VectorXd sample_star(const StarSimplex& s, double r, Rng& rng) {
  // Flat Dirichlet weights give a uniform point of the simplex.
  const auto& vertices = s.vertices();
  Eigen::VectorXd point = Eigen::VectorXd::Zero(s.n());
  double total = 0.0;
  for (const auto& v : vertices) {
    const double w = standard_exponential(rng);
    point += w * v;
    total += w;
  }
  point /= total;
  return s.center() + r * (point - s.center());
}

template <class Rng>
BlockValue sample_block(const BlockSpec& block, double r, Rng& rng) {
  switch (block.kind) {
    case BlockKind::RealScalar:
      return uniform_symmetric(rng, r);
    case BlockKind::ComplexScalar: {
      const double radius = r * std::sqrt(uniform_open01(rng));
      const double angle = 2.0 * std::numbers::pi * uniform_open01(rng);
      return std::polar(radius, angle);
    }
    case BlockKind::RealFull:
      return sample_real_full_block(block.rows, block.cols, r, rng);
    case BlockKind::ComplexFull:
      return sample_complex_full_block(block.rows, block.cols, r, rng);
  }
  throw InvalidArgument("unknown block kind");
}

}  // namespace detail

/// Uniform sample over B(r). B(0) yields the center deterministically.
template <class Rng>
UncertaintyPoint sample_uniform(const UncertaintySet& set, double r, Rng& rng) {
  if (!(r >= 0.0)) {
    throw InvalidArgument("sample_uniform: r must be >= 0");
  }
  if (r == 0.0) {
    return center(set);
  }
  return std::visit(
      detail::Overloaded{
          [&](const LpBall& b) -> UncertaintyPoint {
            return detail::sample_lp(b, r, rng);
          },
          [&](const StarSimplex& s) -> UncertaintyPoint {
            return detail::sample_star(s, r, rng);
          },
          [&](const SpectralBall& b) -> UncertaintyPoint {
            BlockValues values;
            values.reserve(b.blocks().size());
            for (const auto& block : b.blocks()) {
              values.push_back(detail::sample_block(block, r, rng));
            }
            return values;
          }},
      set);
}

/// Full-block sampler entry point dispatching on the block field.
template <class Rng>
BlockValue sample_full_block(BlockKind kind, int m, int n, double r, Rng& rng) {
  if (is_scalar(kind)) {
    throw InvalidArgument("sample_full_block: scalar kind given");
  }
  return detail::sample_block(BlockSpec::full(kind, m, n), r, rng);
}

struct RadialCdfPoint {
  double threshold = 0.0;  // t: fraction of the radius
  double empirical = 0.0;  // fraction of samples with gauge <= t r
  double expected = 0.0;   // t^d
  double sigma = 0.0;      // binomial standard deviation of `empirical`
  double z_score() const { return sigma > 0 ? (empirical - expected) / sigma : 0.0; }
};

struct RadialCdfReport {
  int dimension = 0;
  std::uint64_t samples = 0;
  std::uint64_t support_violations = 0;  // draws with gauge > r
  std::vector<RadialCdfPoint> points;
};

/// Monte Carlo check of Pr{gauge <= t r} = t^d on one stream.
inline RadialCdfReport radial_cdf_check(const UncertaintySet& set, double r,
                                        std::uint64_t samples,
                                        const std::vector<double>& thresholds,
                                        std::uint64_t seed) {
  RadialCdfReport report;
  report.dimension = dimension(set);
  report.samples = samples;
  std::vector<std::uint64_t> hits(thresholds.size(), 0);
  CounterRng rng(seed, 0);
  for (std::uint64_t k = 0; k < samples; ++k) {
    const double g = gauge(set, sample_uniform(set, r, rng));
    if (g > r * (1.0 + 1e-12)) {
      ++report.support_violations;
    }
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
      if (g <= thresholds[j] * r) {
        ++hits[j];
      }
    }
  }
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    RadialCdfPoint p;
    p.threshold = thresholds[j];
    p.expected = std::pow(thresholds[j], report.dimension);
    p.empirical = static_cast<double>(hits[j]) / static_cast<double>(samples);
    p.sigma = std::sqrt(p.expected * (1.0 - p.expected) /
                        static_cast<double>(samples));
    report.points.push_back(p);
  }
  return report;
}

}  // namespace robustdeg
