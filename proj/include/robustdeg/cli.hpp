#pragma once

// robustdeg <run|baseline|factor|figures|sampler-test>
//
// Exit codes: 0 success, 1 config or argument error, 2 runtime error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robustdeg/config.hpp"
#include "robustdeg/engine.hpp"
#include "robustdeg/output.hpp"
#include "robustdeg/uncertainty.hpp"

namespace robustdeg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

namespace detail {

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::string out, svg, json;
};

inline void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "experiment config (JSON)")->required();
  cmd->add_option("--seed", f.seed, "override the config seed");
  cmd->add_option("--workers", f.workers, "override the worker count");
  cmd->add_option("--out", f.out, "CSV output path");
  cmd->add_option("--svg", f.svg, "SVG plot path");
  cmd->add_option("--json", f.json, "JSON output path");
}

inline ExperimentConfig load_with_overrides(const RunFlags& f) {
  ExperimentConfig cfg = parse_config(f.config);
  if (f.seed) {
    cfg.seed = *f.seed;
  }
  if (f.workers) {
    if (*f.workers < 1) {
      throw ConfigError("--workers must be >= 1", "workers");
    }
    cfg.workers = *f.workers;
  }
  if (!f.out.empty()) cfg.outputs.csv = f.out;
  if (!f.svg.empty()) cfg.outputs.svg = f.svg;
  if (!f.json.empty()) cfg.outputs.json = f.json;
  return cfg;
}

inline void finish_run(const RunOutputs& rendered, const ExperimentConfig& cfg,
                       std::ostream& out) {
  emit_outputs(rendered, cfg.outputs);
  if (cfg.outputs.csv.empty()) {
    out << rendered.csv;
  }
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Robustness degradation curves by sample reuse", "robustdeg"};
  app.require_subcommand(1);

  detail::RunFlags run_flags, baseline_flags;
  auto* run = app.add_subcommand("run", "sample-reuse degradation curve");
  detail::add_run_flags(run, run_flags);
  auto* baseline = app.add_subcommand("baseline", "conventional N-per-radius curve");
  detail::add_run_flags(baseline, baseline_flags);

  int l = 0, d = 0;
  double a = 0.0, b = 0.0;
  auto* factor = app.add_subcommand("factor", "theoretical sample reuse factor");
  factor->add_option("--l", l, "number of radii")->required();
  factor->add_option("--a", a, "smallest radius")->required();
  factor->add_option("--b", b, "largest radius")->required();
  factor->add_option("--d", d, "volume dimension")->required();

  std::string figures_out;
  auto* figures = app.add_subcommand("figures", "reuse factor versus dimension table");
  figures->add_option("--out", figures_out, "CSV output path (default stdout)");

  std::string sampler_config;
  std::uint64_t sampler_samples = 100000;
  std::uint64_t sampler_seed = 0;
  auto* sampler = app.add_subcommand("sampler-test", "radial CDF check of a sampler");
  sampler->add_option("--config", sampler_config, "experiment config (JSON)")->required();
  sampler->add_option("--samples", sampler_samples, "number of draws");
  sampler->add_option("--seed", sampler_seed, "stream seed");

  std::vector<std::string> argv_storage{"robustdeg"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_storage) {
    argv.push_back(s.data());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "robustdeg: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*run) {
      const auto cfg = detail::load_with_overrides(run_flags);
      const auto result = run_sample_reuse(cfg.engine_config());
      const auto rendered =
          render_outputs(result.curve, &result.report, cfg, "Robustness degradation");
      detail::finish_run(rendered, cfg, out);
      err << "reuse factor: theoretical " << result.report.theoretical_factor
          << ", empirical " << result.report.empirical_factor << " ("
          << result.report.total_evaluations << " evaluations)\n";
      if (result.report.degenerate_evaluations > 0) {
        err << "warning: " << result.report.degenerate_evaluations
            << " degenerate closed loops counted as violations\n";
      }
    } else if (*baseline) {
      const auto cfg = detail::load_with_overrides(baseline_flags);
      const auto curve = run_conventional(cfg.engine_config());
      const auto rendered =
          render_outputs(curve, nullptr, cfg, "Robustness degradation (conventional)");
      detail::finish_run(rendered, cfg, out);
    } else if (*factor) {
      const double f = theoretical_reuse_factor(make_grid(a, b, l), d);
      out << detail::format("%.12g", f) << '\n';
    } else if (*figures) {
      const auto table = figure_reuse_curves(caption_configs(), 1, 200);
      std::ostringstream csv;
      csv << 'd';
      for (const auto& c : table.configs) {
        csv << ',' << c.label;
      }
      csv << '\n';
      for (std::size_t row = 0; row < table.dimensions.size(); ++row) {
        csv << table.dimensions[row];
        for (double v : table.factor[row]) {
          csv << ',' << detail::format("%.10g", v);
        }
        csv << '\n';
      }
      if (figures_out.empty()) {
        out << csv.str();
      } else {
        detail::write_file(figures_out, csv.str());
      }
    } else if (*sampler) {
      const auto cfg = parse_config(sampler_config);
      const auto report = radial_cdf_check(cfg.uncertainty, 1.0, sampler_samples,
                                           {0.6, 0.8, 0.9}, sampler_seed);
      out << "dimension," << report.dimension << '\n';
      out << "samples," << report.samples << '\n';
      out << "support_violations," << report.support_violations << '\n';
      out << "t,empirical,expected,sigma,z\n";
      for (const auto& p : report.points) {
        out << detail::format("%.3g", p.threshold) << ','
            << detail::format("%.6f", p.empirical) << ','
            << detail::format("%.6f", p.expected) << ','
            << detail::format("%.6f", p.sigma) << ','
            << detail::format("%.3f", p.z_score()) << '\n';
      }
    }
  } catch (const ConfigError& e) {
    err << "robustdeg: config error";
    if (!e.field().empty()) {
      err << " [" << e.field() << "]";
    }
    err << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    err << "robustdeg: invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "robustdeg: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace robustdeg
