#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "robustdeg/config.hpp"
#include "robustdeg/engine.hpp"

namespace robustdeg {

namespace detail {

inline std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + path + "'");
  }
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "radius,trials,successes,estimate,ci_low,ci_high,fresh_samples,lower_bound";

/// One row per radius in descending order. Radius with 6 significant digits,
/// probabilities with 6 decimals.
inline std::string curve_csv(const DegradationCurve& curve) {
  const auto bound = lower_bound_curve(curve);
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    out << detail::format("%.6g", p.radius) << ',' << p.trials << ',' << p.successes
        << ',' << detail::format("%.6f", p.estimate) << ','
        << detail::format("%.6f", p.ci_low) << ',' << detail::format("%.6f", p.ci_high)
        << ',' << p.fresh << ',' << detail::format("%.6f", bound.bound[i]) << '\n';
  }
  return out.str();
}

inline Json report_to_json(const ReuseReport& r) {
  return {{"dimension", r.dimension},
          {"theoretical_factor", r.theoretical_factor},
          {"empirical_factor", r.empirical_factor},
          {"expected_fresh", r.expected_fresh},
          {"observed_fresh", r.observed_fresh},
          {"total_evaluations", r.total_evaluations},
          {"degenerate_evaluations", r.degenerate_evaluations}};
}

inline Json curve_to_json(const DegradationCurve& curve) {
  const auto bound = lower_bound_curve(curve);
  Json rows = Json::array();
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    rows.push_back({{"radius", p.radius},
                    {"trials", p.trials},
                    {"successes", p.successes},
                    {"estimate", p.estimate},
                    {"ci_low", p.ci_low},
                    {"ci_high", p.ci_high},
                    {"fresh_samples", p.fresh},
                    {"lower_bound", bound.bound[i]}});
  }
  return {{"samples_per_radius", curve.samples_per_radius},
          {"delta", curve.delta},
          {"lower_bound_restricted_to_sampled", bound.restricted_to_sampled},
          {"points", rows}};
}

/// Estimate versus radius with the confidence band shaded and the running
/// lower bound dashed.
inline std::string curve_svg(const DegradationCurve& curve, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 20, kTop = 40,
                   kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  double r_max = 0.0;
  for (const auto& p : curve.points) {
    r_max = std::max(r_max, p.radius);
  }
  if (!(r_max > 0.0)) {
    r_max = 1.0;
  }
  auto x = [&](double r) { return kLeft + plot_w * r / r_max; };
  auto y = [&](double v) { return kTop + plot_h * (1.0 - v); };
  auto pt = [&](double r, double v) {
    return detail::format("%.2f", x(r)) + "," + detail::format("%.2f", y(v));
  };
  const auto bound = lower_bound_curve(curve);

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << y(0) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << y(0) << "\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << y(0) << "\" x2=\"" << kLeft
      << "\" y2=\"" << y(1) << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double v = k / 5.0;
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << detail::format("%.2f", y(v) + 4)
        << "\" text-anchor=\"end\">" << detail::format("%.1f", v) << "</text>\n";
    const double r = r_max * k / 5.0;
    svg << "<text x=\"" << detail::format("%.2f", x(r)) << "\" y=\"" << y(0) + 16
        << "\" text-anchor=\"middle\">" << detail::format("%.3g", r) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">uncertainty radius</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << kTop + plot_h / 2
      << ")\">proportion</text>\n</g>\n";

  if (!curve.points.empty()) {
    svg << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
    for (const auto& p : curve.points) {
      svg << pt(p.radius, p.ci_high) << ' ';
    }
    for (auto it = curve.points.rbegin(); it != curve.points.rend(); ++it) {
      svg << pt(it->radius, it->ci_low) << ' ';
    }
    svg << "\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : curve.points) {
      svg << pt(p.radius, p.estimate) << ' ';
    }
    svg << "\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"#cb181d\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"5,3\" points=\"";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      svg << pt(curve.points[i].radius, bound.bound[i]) << ' ';
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

struct RunOutputs {
  std::string csv;
  Json json;
  std::string svg;
};

inline RunOutputs render_outputs(const DegradationCurve& curve, const ReuseReport* report,
                                 const ExperimentConfig& config, const std::string& title) {
  RunOutputs out;
  out.csv = curve_csv(curve);
  out.json = {{"config", to_json(config)}, {"curve", curve_to_json(curve)}};
  if (report != nullptr) {
    out.json["report"] = report_to_json(*report);
  }
  out.svg = curve_svg(curve, title);
  return out;
}

/// Writes whichever of csv/json/svg have a path in `paths`.
inline void emit_outputs(const RunOutputs& rendered, const OutputPaths& paths) {
  if (!paths.csv.empty()) {
    detail::write_file(paths.csv, rendered.csv);
  }
  if (!paths.json.empty()) {
    detail::write_file(paths.json, rendered.json.dump(2) + "\n");
  }
  if (!paths.svg.empty()) {
    detail::write_file(paths.svg, rendered.svg);
  }
}

}  // namespace robustdeg
