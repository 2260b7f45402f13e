#pragma once

// SISO closed loops whose polynomial coefficients are affine in named
// uncertainty components, and the robustness predicates evaluated on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "robustdeg/errors.hpp"
#include "robustdeg/uncertainty.hpp"

namespace robustdeg {

/// Real polynomial, coefficients in descending degree.
using Polynomial = std::vector<double>;
using Complex = std::complex<double>;

inline Polynomial poly_multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) {
    return {};
  }
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  const std::size_t n = std::max(a.size(), b.size());
  Polynomial out(n, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[n - a.size() + i] += a[i];
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[n - b.size() + i] += b[i];
  }
  return out;
}

inline Polynomial poly_scale(Polynomial p, double k) {
  for (auto& c : p) {
    c *= k;
  }
  return p;
}

inline Complex poly_eval(const Polynomial& p, Complex z) {
  Complex acc = 0.0;
  for (double c : p) {
    acc = acc * z + c;
  }
  return acc;
}

/// Drops leading zero coefficients (keeps at least one entry).
inline Polynomial poly_trim(Polynomial p) {
  auto first = std::find_if(p.begin(), p.end(), [](double c) { return c != 0.0; });
  if (first == p.end()) {
    return {0.0};
  }
  return Polynomial(first, p.end());
}

/// Monic polynomial with the given roots (conjugate pairs expected).
inline Polynomial poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{1.0};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] -= r * c[i];
    }
    c = std::move(next);
  }
  Polynomial out;
  for (const auto& v : c) {
    out.push_back(v.real());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Uncertain descriptions

struct AffineExpr {
  double constant = 0.0;
  std::vector<std::pair<std::string, double>> terms;

  AffineExpr() = default;
  AffineExpr(double c) : constant(c) {}  // NOLINT: implicit from constants
  AffineExpr(double c, std::vector<std::pair<std::string, double>> t)
      : constant(c), terms(std::move(t)) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        if (terms[i].first == terms[j].first) {
          throw ConfigError("duplicate component '" + terms[i].first +
                            "' in affine expression");
        }
      }
    }
  }

  template <class Lookup>
  double evaluate(const Lookup& value_of) const {
    double v = constant;
    for (const auto& [name, coefficient] : terms) {
      v += coefficient * value_of(name);
    }
    return v;
  }

  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
};

using AffinePolynomial = std::vector<AffineExpr>;

/// gain * prod(numerator factors) / prod(denominator factors).
struct UncertainRational {
  AffineExpr gain{1.0};
  std::vector<AffinePolynomial> numerator;
  std::vector<AffinePolynomial> denominator;

  friend bool operator==(const UncertainRational&, const UncertainRational&) = default;
};

struct TransferFunction {
  Polynomial num;
  Polynomial den;
};

namespace detail {

template <class Lookup>
Polynomial expand(const std::vector<AffinePolynomial>& factors,
                  const Lookup& value_of) {
  Polynomial out{1.0};
  for (const auto& factor : factors) {
    Polynomial p;
    p.reserve(factor.size());
    for (const auto& c : factor) {
      p.push_back(c.evaluate(value_of));
    }
    out = poly_multiply(out, p);
  }
  return out;
}

template <class Lookup>
TransferFunction expand(const UncertainRational& g, const Lookup& value_of) {
  return {poly_scale(expand(g.numerator, value_of), g.gain.evaluate(value_of)),
          expand(g.denominator, value_of)};
}

inline void collect_names(const UncertainRational& g,
                          std::vector<std::string>& out) {
  auto from = [&](const AffineExpr& e) {
    for (const auto& t : e.terms) {
      out.push_back(t.first);
    }
  };
  from(g.gain);
  for (const auto* side : {&g.numerator, &g.denominator}) {
    for (const auto& factor : *side) {
      for (const auto& c : factor) {
        from(c);
      }
    }
  }
}

inline std::size_t degree(const Polynomial& p) {
  return poly_trim(p).size() - 1;
}

}  // namespace detail

/// Controller and plant in a unity negative-feedback loop. `binding` maps
/// component names to indices of `coordinates(point)`.
struct UncertainSystem {
  UncertainRational controller;
  UncertainRational plant;
  std::map<std::string, int> binding;

  std::vector<std::string> component_names() const {
    std::vector<std::string> names;
    detail::collect_names(controller, names);
    detail::collect_names(plant, names);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
  }

  /// Every component bound, each rational proper and the loop well-posed
  /// with all components at zero.
  void validate() const {
    for (const auto& name : component_names()) {
      if (!binding.contains(name)) {
        throw ConfigError("component '" + name + "' is not bound", "binding");
      }
    }
    auto zero = [](const std::string&) { return 0.0; };
    for (const auto* g : {&controller, &plant}) {
      const auto tf = detail::expand(*g, zero);
      if (poly_trim(tf.den) == Polynomial{0.0}) {
        throw ConfigError("denominator is identically zero", "system");
      }
      if (detail::degree(tf.num) > detail::degree(tf.den)) {
        throw ConfigError("transfer function is improper", "system");
      }
    }
    const auto c = detail::expand(controller, zero);
    const auto p = detail::expand(plant, zero);
    const auto den = poly_add(poly_multiply(c.den, p.den),
                              poly_multiply(c.num, p.num));
    if (den.empty() || den.front() == 0.0) {
      throw ConfigError("nominal closed loop is not well-posed", "system");
    }
  }

  friend bool operator==(const UncertainSystem&, const UncertainSystem&) = default;
};

namespace detail {

inline auto component_lookup(const UncertainSystem& system,
                             const Eigen::VectorXd& coords) {
  return [&system, &coords](const std::string& name) {
    const auto it = system.binding.find(name);
    if (it == system.binding.end()) {
      throw ConfigError("component '" + name + "' is not bound", "binding");
    }
    if (it->second < 0 || it->second >= coords.size()) {
      throw ConfigError("component '" + name + "' bound outside the point",
                        "binding");
    }
    return coords[it->second];
  };
}

}  // namespace detail

/// Closed-loop T = L / (1 + L), L = C P, evaluated at `delta`.
inline TransferFunction closed_loop(const UncertainSystem& system,
                                    const UncertaintyPoint& delta) {
  const Eigen::VectorXd coords = coordinates(delta);
  const auto lookup = detail::component_lookup(system, coords);
  const auto c = detail::expand(system.controller, lookup);
  const auto p = detail::expand(system.plant, lookup);
  const Polynomial loop_num = poly_multiply(c.num, p.num);
  Polynomial den = poly_add(poly_multiply(c.den, p.den), loop_num);
  double scale = 0.0;
  for (double v : den) {
    scale = std::max(scale, std::abs(v));
  }
  if (den.empty() || std::abs(den.front()) <= 1e-14 * scale) {
    throw DegenerateSystem("closed-loop leading coefficient vanishes");
  }
  Polynomial num(den.size(), 0.0);
  const Polynomial trimmed = poly_trim(loop_num);
  if (trimmed.size() > den.size()) {
    throw DegenerateSystem("closed loop is improper");
  }
  std::copy(trimmed.begin(), trimmed.end(),
            num.begin() + static_cast<std::ptrdiff_t>(den.size() - trimmed.size()));
  return {num, den};
}

/// den_C den_P + num_C num_P at `delta`.
inline Polynomial closed_loop_charpoly(const UncertainSystem& system,
                                       const UncertaintyPoint& delta) {
  return closed_loop(system, delta).den;
}

/// Roots via eigenvalues of the companion matrix.
inline std::vector<Complex> poles(const Polynomial& charpoly) {
  if (charpoly.size() < 2) {
    throw InvalidArgument("poles: degree must be >= 1");
  }
  if (charpoly.front() == 0.0) {
    throw InvalidArgument("poles: leading coefficient is zero");
  }
  const auto n = static_cast<Eigen::Index>(charpoly.size() - 1);
  if (n == 1) {
    return {Complex(-charpoly[1] / charpoly[0], 0.0)};
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    companion(0, j) = -charpoly[j + 1] / charpoly[0];
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    companion(i, i - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto& values = solver.eigenvalues();
  return std::vector<Complex>(values.data(), values.data() + values.size());
}

inline constexpr double kMarginalTolerance = 1e-12;

/// Strict open left half-plane; near-imaginary roots count as unstable.
inline bool is_hurwitz(const std::vector<Complex>& roots) {
  return std::all_of(roots.begin(), roots.end(), [](Complex z) {
    return z.real() < -kMarginalTolerance;
  });
}

// ---------------------------------------------------------------------------
// D-regions

struct HalfPlane {
  double bound = 0.0;  // Re(z) < bound
  friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
};

struct Disk {
  Complex center;
  double radius = 1.0;
  friend bool operator==(const Disk&, const Disk&) = default;
};

using RegionPrimitive = std::variant<HalfPlane, Disk>;

/// Union of open half-planes and open disks.
struct DRegion {
  std::vector<RegionPrimitive> primitives;

  void validate() const {
    if (primitives.empty()) {
      throw ConfigError("D-region needs at least one primitive", "region");
    }
    for (const auto& p : primitives) {
      if (const auto* d = std::get_if<Disk>(&p); d && !(d->radius > 0.0)) {
        throw ConfigError("disk radius must be positive", "region");
      }
    }
  }

  bool contains(Complex z) const {
    return std::any_of(primitives.begin(), primitives.end(), [z](const auto& p) {
      return std::visit(
          detail::Overloaded{
              [z](const HalfPlane& h) { return z.real() < h.bound; },
              [z](const Disk& d) { return std::abs(z - d.center) < d.radius; }},
          p);
    });
  }

  friend bool operator==(const DRegion&, const DRegion&) = default;
};

inline bool in_region(const std::vector<Complex>& roots, const DRegion& region) {
  return std::all_of(roots.begin(), roots.end(),
                     [&](Complex z) { return region.contains(z); });
}

// ---------------------------------------------------------------------------
// State space, H-infinity norm and step response

struct StateSpace {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::RowVectorXd c;
  double d = 0.0;
};

/// Controllable canonical realization of a proper num/den.
inline StateSpace realize(const Polynomial& num_in, const Polynomial& den_in) {
  const Polynomial den = poly_trim(den_in);
  Polynomial num = poly_trim(num_in);
  if (den.front() == 0.0) {
    throw InvalidArgument("realize: zero denominator");
  }
  if (num.size() > den.size()) {
    throw InvalidArgument("realize: improper transfer function");
  }
  const auto n = static_cast<Eigen::Index>(den.size() - 1);
  num.insert(num.begin(), den.size() - num.size(), 0.0);
  const double lead = den.front();
  StateSpace ss;
  ss.d = num[0] / lead;
  ss.a = Eigen::MatrixXd::Zero(n, n);
  ss.b = Eigen::VectorXd::Zero(n);
  ss.c = Eigen::RowVectorXd::Zero(n);
  if (n == 0) {
    return ss;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a_j = den[j + 1] / lead;
    ss.a(0, j) = -a_j;
    ss.c[j] = num[j + 1] / lead - ss.d * a_j;
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    ss.a(i, i - 1) = 1.0;
  }
  ss.b[0] = 1.0;
  return ss;
}

inline double dc_gain(const Polynomial& num, const Polynomial& den) {
  return num.back() / den.back();
}

inline double frequency_magnitude(const Polynomial& num, const Polynomial& den,
                                  double omega) {
  const Complex s(0.0, omega);
  return std::abs(poly_eval(num, s) / poly_eval(den, s));
}

struct FrequencySweep {
  double peak = 0.0;
  double peak_frequency = 0.0;
};

/// 200-point log-spaced sweep spanning two decades either side of the pole
/// magnitudes, plus omega = 0.
inline FrequencySweep frequency_sweep(const Polynomial& num,
                                      const Polynomial& den) {
  const auto roots = poles(poly_trim(den));
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& z : roots) {
    const double m = std::abs(z);
    if (m > 0.0) {
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
  }
  if (!(hi > 0.0)) {
    lo = hi = 1.0;
  }
  const double log_lo = std::log10(lo) - 2.0;
  const double log_hi = std::log10(hi) + 2.0;
  FrequencySweep sweep{frequency_magnitude(num, den, 0.0), 0.0};
  constexpr int kPoints = 200;
  for (int k = 0; k < kPoints; ++k) {
    const double w =
        std::pow(10.0, log_lo + (log_hi - log_lo) * k / (kPoints - 1));
    const double m = frequency_magnitude(num, den, w);
    if (m > sweep.peak) {
      sweep = {m, w};
    }
  }
  return sweep;
}

namespace detail {

// Frequencies w > 0 where |T(jw)| = gamma: imaginary-axis eigenvalues of
// the Hamiltonian of (ss, gamma), sorted ascending.
inline std::vector<double> level_crossings(const StateSpace& ss, double gamma) {
  const auto n = ss.a.rows();
  const double r = ss.d * ss.d - gamma * gamma;  // R = S for SISO
  const Eigen::MatrixXd bc = ss.b * ss.c;
  Eigen::MatrixXd h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = ss.a - (ss.d / r) * bc;
  h.topRightCorner(n, n) = -(gamma / r) * ss.b * ss.b.transpose();
  h.bottomLeftCorner(n, n) = (gamma / r) * ss.c.transpose() * ss.c;
  h.bottomRightCorner(n, n) = -ss.a.transpose() + (ss.d / r) * bc.transpose();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(h, false);
  const auto& ev = solver.eigenvalues();
  std::vector<double> w;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev[k].imag() >= 0.0 &&
        std::abs(ev[k].real()) < 1e-6 * std::max(1.0, std::abs(ev[k]))) {
      w.push_back(ev[k].imag());
    }
  }
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace detail

/// sup_w |T(jw)| by the two-step level-set iteration: start from a
/// frequency sweep, then repeatedly evaluate |T| between consecutive
/// crossings of the level (1 + 2 eps) * lower bound. Returns an upper bound
/// within relative 1e-7.
inline double hinf_norm(const Polynomial& num, const Polynomial& den) {
  if (!is_hurwitz(poles(poly_trim(den)))) {
    throw InvalidArgument("hinf_norm: denominator is not Hurwitz");
  }
  const StateSpace ss = realize(num, den);
  double lo = std::max({frequency_sweep(num, den).peak, std::abs(ss.d),
                        frequency_magnitude(num, den, 0.0)});
  if (ss.a.rows() == 0 || ss.c.isZero(0.0)) {
    return lo;
  }
  constexpr double kEps = 5e-8;
  for (int it = 0; it < 100; ++it) {
    const double gamma = (1.0 + 2.0 * kEps) * lo;
    const auto w = detail::level_crossings(ss, gamma);
    double best = lo;
    for (std::size_t i = 0; i < w.size(); ++i) {
      best = std::max(best, frequency_magnitude(num, den, w[i]));
      const double next = i + 1 < w.size() ? w[i + 1] : w[i];
      best = std::max(best, frequency_magnitude(num, den, 0.5 * (w[i] + next)));
      if (i == 0) {
        best = std::max(best, frequency_magnitude(num, den, 0.5 * w[i]));
      }
    }
    if (w.empty() || !(best > lo)) {
      return gamma;
    }
    lo = best;
  }
  return (1.0 + 2.0 * kEps) * lo;
}

struct StepTrajectory {
  double dt = 0.0;
  std::vector<double> values;  // y(k dt), k = 0..
};

/// Unit-step response sampled on [0, horizon] by exact zero-order-hold
/// discretization of the state-space realization.
inline StepTrajectory step_response(const Polynomial& num, const Polynomial& den,
                                    double dt, double horizon) {
  if (!(dt > 0.0) || horizon < dt) {
    throw InvalidArgument("step_response: need dt > 0 and horizon >= dt");
  }
  const StateSpace ss = realize(num, den);
  const auto n = ss.a.rows();
  const auto steps = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9));
  StepTrajectory out{dt, {}};
  out.values.reserve(steps + 1);
  if (n == 0) {
    out.values.assign(steps + 1, ss.d);
    return out;
  }
  Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(n + 1, n + 1);
  augmented.topLeftCorner(n, n) = ss.a * dt;
  augmented.topRightCorner(n, 1) = ss.b * dt;
  const Eigen::MatrixXd phi = augmented.exp();
  const Eigen::MatrixXd ad = phi.topLeftCorner(n, n);
  const Eigen::VectorXd bd = phi.topRightCorner(n, 1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (std::size_t k = 0; k <= steps; ++k) {
    out.values.push_back(ss.c.dot(x) + ss.d);
    x = ad * x + bd;
  }
  return out;
}

enum class RiseDefinition { TenToNinety, ZeroToNinety };

inline const char* to_string(RiseDefinition d) {
  return d == RiseDefinition::TenToNinety ? "10-90" : "0-90";
}

struct StepMetrics {
  double peak = 0.0;  // max / final value
  double rise_time = 0.0;
  double settling_time = 0.0;
  double final_value = 0.0;
};

namespace detail {

// First time the trajectory reaches `level` (rising), linearly interpolated.
inline double first_crossing(const StepTrajectory& y, double level) {
  const auto& v = y.values;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] >= level) {
      if (k == 0) {
        return 0.0;
      }
      const double frac = (level - v[k - 1]) / (v[k] - v[k - 1]);
      return (static_cast<double>(k - 1) + frac) * y.dt;
    }
  }
  throw HorizonTooShort("step response never reaches rise threshold");
}

}  // namespace detail

inline StepMetrics step_metrics(const StepTrajectory& y, double final_value,
                                RiseDefinition rise, double settling_band) {
  if (!(final_value > 0.0)) {
    throw InvalidArgument("step_metrics: final value must be positive");
  }
  if (y.values.empty()) {
    throw InvalidArgument("step_metrics: empty trajectory");
  }
  StepMetrics m;
  m.final_value = final_value;
  m.peak = *std::max_element(y.values.begin(), y.values.end()) / final_value;

  const double t90 = detail::first_crossing(y, 0.9 * final_value);
  const double t_start = rise == RiseDefinition::TenToNinety
                             ? detail::first_crossing(y, 0.1 * final_value)
                             : 0.0;
  m.rise_time = t90 - t_start;

  const double band = settling_band * final_value;
  const auto& v = y.values;
  std::size_t last_out = v.size();
  for (std::size_t k = v.size(); k-- > 0;) {
    if (std::abs(v[k] - final_value) > band) {
      last_out = k;
      break;
    }
  }
  if (last_out == v.size()) {
    m.settling_time = 0.0;
  } else if (last_out + 1 == v.size()) {
    throw HorizonTooShort("step response has not settled within the horizon");
  } else {
    const double edge =
        final_value + (v[last_out] > final_value ? band : -band);
    const double frac = (edge - v[last_out]) / (v[last_out + 1] - v[last_out]);
    m.settling_time = (static_cast<double>(last_out) + frac) * y.dt;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Robustness requirement

struct StepBounds {
  double rise_max = 0.0;
  double settle_max = 0.0;
  double peak_max = 0.0;
  friend bool operator==(const StepBounds&, const StepBounds&) = default;
};

/// Conjunction of the enabled atoms.
struct RobustnessSpec {
  bool stability = false;
  std::optional<DRegion> d_stability;
  std::optional<double> hinf_bound;
  std::optional<StepBounds> step;

  double dt = 1e-3;
  double horizon = 8.0;
  RiseDefinition rise = RiseDefinition::TenToNinety;
  double settling_band = 0.02;

  void validate() const {
    if (!stability && !d_stability && !hinf_bound && !step) {
      throw ConfigError("robustness spec needs at least one atom", "spec");
    }
    if (step && !stability) {
      throw ConfigError("step bounds require the stability atom", "spec");
    }
    if (d_stability) {
      d_stability->validate();
    }
    if (hinf_bound && !(*hinf_bound > 0.0)) {
      throw ConfigError("H-infinity bound must be positive", "spec");
    }
    if (!(dt > 0.0) || horizon < dt) {
      throw ConfigError("step simulation needs dt > 0 and horizon >= dt", "spec");
    }
    if (!(settling_band > 0.0 && settling_band < 1.0)) {
      throw ConfigError("settling band must lie in (0, 1)", "spec");
    }
  }

  friend bool operator==(const RobustnessSpec&, const RobustnessSpec&) = default;
};

enum class Outcome { Satisfied, Violated, Degenerate };

/// Atoms checked cheapest first: stability, D-stability, H-inf, step.
inline Outcome evaluate_outcome(const RobustnessSpec& spec,
                                const UncertainSystem& system,
                                const UncertaintyPoint& delta) {
  TransferFunction t;
  try {
    t = closed_loop(system, delta);
  } catch (const DegenerateSystem&) {
    return Outcome::Degenerate;
  }
  const auto roots = poles(t.den);
  const bool needs_stable = spec.stability || spec.hinf_bound || spec.step;
  if (needs_stable && !is_hurwitz(roots)) {
    return Outcome::Violated;
  }
  if (spec.d_stability && !in_region(roots, *spec.d_stability)) {
    return Outcome::Violated;
  }
  if (spec.hinf_bound && !(hinf_norm(t.num, t.den) < *spec.hinf_bound)) {
    return Outcome::Violated;
  }
  if (spec.step) {
    const double final_value = dc_gain(t.num, t.den);
    if (!(final_value > 0.0)) {
      return Outcome::Violated;
    }
    try {
      const auto traj = step_response(t.num, t.den, spec.dt, spec.horizon);
      const auto m = step_metrics(traj, final_value, spec.rise, spec.settling_band);
      if (!(m.rise_time < spec.step->rise_max) ||
          !(m.settling_time < spec.step->settle_max) ||
          !(m.peak < spec.step->peak_max)) {
        return Outcome::Violated;
      }
    } catch (const HorizonTooShort&) {
      return Outcome::Violated;
    }
  }
  return Outcome::Satisfied;
}

inline bool evaluate(const RobustnessSpec& spec, const UncertainSystem& system,
                     const UncertaintyPoint& delta) {
  return evaluate_outcome(spec, system, delta) == Outcome::Satisfied;
}

// ---------------------------------------------------------------------------
// Builtin example

/// C(s) = (s+2)/(s+10),
/// P(s) = 800(1 + 0.1 d1) / (s (s + 4 + 0.2 d2)(s + 6 + 0.3 d3)),
/// with d1, d2, d3 bound to coordinates 0, 1, 2.
inline UncertainSystem gsv_example() {
  UncertainSystem sys;
  sys.controller.gain = 1.0;
  sys.controller.numerator = {{1.0, 2.0}};
  sys.controller.denominator = {{1.0, 10.0}};
  sys.plant.gain = AffineExpr(800.0, {{"d1", 80.0}});
  sys.plant.numerator = {};
  sys.plant.denominator = {
      {1.0, 0.0},
      {1.0, AffineExpr(4.0, {{"d2", 0.2}})},
      {1.0, AffineExpr(6.0, {{"d3", 0.3}})},
  };
  sys.binding = {{"d1", 0}, {"d2", 1}, {"d3", 2}};
  return sys;
}

}  // namespace robustdeg
