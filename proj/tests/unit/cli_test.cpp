#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "robustdeg/cli.hpp"

using namespace robustdeg;
namespace fs = std::filesystem;

namespace {

const char* kBoxConfig = R"({
  "system": "gsv_example",
  "uncertainty": {"type": "lp", "p": "inf", "n": 3},
  "grid": {"a": 0, "b": 6, "l": 12},
  "sampling": {"N": 300},
  "spec": {"atoms": [{"type": "stability"}]},
  "seed": 42
})";

Json box_json() { return Json::parse(kBoxConfig); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("robustdeg_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const auto p = (path_ / name).string();
    if (!content.empty()) {
      std::ofstream(p) << content;
    }
    return p;
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Config, ChernoffResolvesSampleSize) {
  auto j = box_json();
  j["sampling"] = {{"chernoff", {{"epsilon", 0.01}, {"delta", 0.01}}}};
  EXPECT_EQ(config_from_json(j).samples_per_radius, 26492u);
}

TEST(Config, Defaults) {
  const auto cfg = config_from_json(box_json());
  EXPECT_EQ(cfg.delta, 0.01);
  EXPECT_EQ(cfg.workers, 1u);
  EXPECT_EQ(cfg.spec.rise, RiseDefinition::TenToNinety);
  EXPECT_EQ(cfg.spec.settling_band, 0.02);
}

TEST(Config, MissingGridNamesField) {
  auto j = box_json();
  j.erase("grid");
  try {
    config_from_json(j);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "grid");
    EXPECT_NE(std::string(e.what()).find("grid"), std::string::npos);
  }
}

TEST(Config, TiedRadiiRejected) {
  auto j = box_json();
  j["grid"] = {{"radii", {1, 1, 0.5}}};
  try {
    config_from_json(j);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("radii must be strictly decreasing"),
              std::string::npos);
  }
}

TEST(Config, OtherValidation) {
  auto j = box_json();
  j["sampling"] = {{"N", 10}, {"chernoff", {{"epsilon", 0.1}, {"delta", 0.1}}}};
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = box_json();
  j["system"] = "nonexistent";
  EXPECT_THROW(config_from_json(j), ConfigError);
  j = box_json();
  j["uncertainty"]["n"] = 2;  // d3 bound to coordinate 2
  try {
    config_from_json(j);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "binding");
  }
}

TEST(Config, ParseErrorReportsLine) {
  try {
    parse_config_text("{\n  \"system\": ,\n}");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Config, RoundTrip) {
  for (const char* name : {"box_stability.json", "ellipsoid_hinf.json",
                           "polytope_dstab.json", "box_step.json",
                           "blocks_stability.json"}) {
    const auto cfg = parse_config(std::string(ROBUSTDEG_CONFIG_DIR) + "/" + name);
    EXPECT_EQ(config_from_json(to_json(cfg)), cfg) << name;
    EXPECT_EQ(config_from_json(Json::parse(to_json(cfg).dump())), cfg) << name;
  }
  auto j = box_json();
  j["system"] = {{"controller", {{"gain", 1}, {"numerator", {{1, 2}}}, {"denominator", {{1, 10}}}}},
                 {"plant", {{"gain", {{"constant", 800}, {"terms", {{"d1", 80}}}}},
                            {"denominator", {{1, 0}, {1, 4}, {1, 6}}}}},
                 {"binding", {{"d1", 0}}}};
  const auto custom = config_from_json(j);
  EXPECT_EQ(custom.system_name, "custom");
  EXPECT_EQ(config_from_json(to_json(custom)), custom);
}

TEST(Cli, FactorMatchesLibrary) {
  const auto r = cli({"factor", "--l", "100", "--a", "0", "--b", "1", "--d", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NEAR(std::stod(r.out), theoretical_reuse_factor(make_grid(0, 1, 100), 3), 1e-10);
}

TEST(Cli, RunTwiceIsByteIdentical) {
  TempDir dir;
  const auto config = dir.file("box.json", kBoxConfig);
  const auto a = dir.file("a.csv"), b = dir.file("b.csv");
  ASSERT_EQ(cli({"run", "--config", config, "--seed", "42", "--workers", "1", "--out", a}).code,
            kExitOk);
  ASSERT_EQ(cli({"run", "--config", config, "--seed", "42", "--workers", "1", "--out", b}).code,
            kExitOk);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto w3 = cli({"run", "--config", config, "--workers", "3"});
  EXPECT_EQ(w3.out, slurp(a));
}

TEST(Cli, CsvRowsAndReparse) {
  TempDir dir;
  const auto config = dir.file("box.json", kBoxConfig);
  const auto json_path = dir.file("out.json"), svg_path = dir.file("out.svg");
  const auto r = cli({"run", "--config", config, "--json", json_path, "--svg", svg_path});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 13u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), kCsvHeader);

  const auto cfg = parse_config(config);
  const auto result = run_sample_reuse(cfg.engine_config());
  const auto bound = lower_bound_curve(result.curve);
  for (std::size_t i = 0; i < result.curve.points.size(); ++i) {
    const auto& p = result.curve.points[i];
    const auto& row = rows[i + 1];
    ASSERT_EQ(row.size(), 8u);
    EXPECT_NEAR(std::stod(row[0]), p.radius, 1e-5 * std::max(1.0, p.radius));
    EXPECT_EQ(std::stoull(row[1]), p.trials);
    EXPECT_EQ(std::stoull(row[2]), p.successes);
    EXPECT_NEAR(std::stod(row[3]), p.estimate, 5e-7);
    EXPECT_NEAR(std::stod(row[4]), p.ci_low, 5e-7);
    EXPECT_NEAR(std::stod(row[5]), p.ci_high, 5e-7);
    EXPECT_EQ(std::stoull(row[6]), p.fresh);
    EXPECT_NEAR(std::stod(row[7]), bound.bound[i], 5e-7);
  }
  const auto j = Json::parse(slurp(json_path));
  EXPECT_EQ(j["curve"]["points"].size(), 12u);
  EXPECT_EQ(j["report"]["dimension"], 3);
  auto with_paths = cfg;
  with_paths.outputs.json = json_path;
  with_paths.outputs.svg = svg_path;
  EXPECT_EQ(config_from_json(j["config"]), with_paths);
  const auto svg = slurp(svg_path);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polygon"), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
}

TEST(Cli, AlwaysTrueEstimatesAreOne) {
  TempDir dir;
  auto j = box_json();
  j["grid"] = {{"a", 0}, {"b", 1}, {"l", 10}};
  const auto config = dir.file("safe.json", j.dump());
  const auto rows = parse_csv(cli({"run", "--config", config}).out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][3], "1.000000");
  }
}

TEST(Cli, Baseline) {
  TempDir dir;
  const auto config = dir.file("box.json", kBoxConfig);
  const auto r = cli({"baseline", "--config", config});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_csv(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][1], "300");
    EXPECT_EQ(rows[i][6], "300");
  }
}

TEST(Cli, FiguresColumnsNonincreasing) {
  const auto r = cli({"figures"});
  ASSERT_EQ(r.code, kExitOk);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"d", "A", "B", "C", "D"}));
  for (std::size_t i = 2; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), 5u);
    for (std::size_t c = 1; c < 5; ++c) {
      EXPECT_LE(std::stod(rows[i][c]), std::stod(rows[i - 1][c]));
    }
  }
}

TEST(Cli, SamplerTest) {
  const auto r = cli({"sampler-test", "--config",
                      std::string(ROBUSTDEG_CONFIG_DIR) + "/blocks_stability.json",
                      "--samples", "2000", "--seed", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("dimension,34"), std::string::npos);
  EXPECT_NE(r.out.find("support_violations,0"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  EXPECT_EQ(cli({}).code, kExitConfig);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitConfig);
  EXPECT_EQ(cli({"run", "--config", dir.file("missing.json")}).code, kExitConfig);
  EXPECT_EQ(cli({"factor", "--l", "10", "--a", "2", "--b", "1", "--d", "3"}).code,
            kExitConfig);
  const auto config = dir.file("box.json", kBoxConfig);
  EXPECT_EQ(cli({"run", "--config", config, "--out", "/nonexistent/dir/x.csv"}).code,
            kExitRuntime);
  const auto r = cli({"run", "--config", config, "--workers", "0"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("workers"), std::string::npos);
}
