// Copyright 2026 The portsel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "portsel/cli.hpp"
#include "portsel/config_io.hpp"
#include "portsel/report_io.hpp"
#include "portsel/validation.hpp"

using namespace portsel;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "portsel");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("portsel-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# experiment\n"
      "n = 12\n"
      "N = 4\n"
      "n_star = 5   # half-ish\n"
      "beta_grid = 0, 2.5, 10\n"
      "mode = discrete\n"
      "methods = Borda,Quicksort\n"
      "\n"
      "master_seed = 18446744073709551615\n"
      "scheme = Zermelo\n");
  const ExperimentConfig c = parse_config(in);
  CHECK(c.projects == 12);
  CHECK(c.agents == 4);
  CHECK(c.n_star == 5);
  CHECK(c.beta_grid == std::vector<double>{0, 2.5, 10});
  CHECK(c.mode.is_discrete());
  CHECK(c.methods == std::vector<Method>{Method::Borda, Method::Quicksort});
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.solver.scheme == Scheme::Zermelo);
}

TEST_CASE("config errors name the key") {
  ExperimentConfig c;
  auto key_of = [&](std::string_view assignment) {
    try {
      apply_override(c, assignment);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of("bogus=1") == "bogus");
  CHECK(key_of("trials=0") == "trials");
  CHECK(key_of("trials=-3") == "trials");
  CHECK(key_of("n=abc") == "n");
  CHECK(key_of("mode=fuzzy") == "mode");
  CHECK(key_of("methods=Borda,Nope") == "methods");
  CHECK(key_of("tolerance=x") == "tolerance");
  CHECK(key_of("levels=0.3,0.5") == "levels");

  std::istringstream bad("n 30\n");
  CHECK_THROWS_AS(parse_config(bad), ConfigError);

  ExperimentConfig too_many;
  too_many.n_star = 40;
  try {
    check_config(too_many);
    FAIL("accepted n_star > n");
  } catch (const ConfigError&) {
  }
}

TEST_CASE("config entries round-trip") {
  ExperimentConfig c;
  apply_override(c, "n=10");
  apply_override(c, "n_star=3");
  apply_override(c, "values=5,4,3,2,1,1,2,3,4,5");
  apply_override(c, "mode=discrete");
  apply_override(c, "levels=0.2,0.5,0.8");
  apply_override(c, "zero_noise=true");
  apply_override(c, "tolerance=1e-9");
  ExperimentConfig back;
  for (const auto& [k, v] : config_entries(c)) apply_setting(back, k, v);
  CHECK(back.projects == 10);
  CHECK(back.values == c.values);
  CHECK(back.mode == c.mode);
  CHECK(back.zero_noise);
  CHECK(back.solver.tolerance == 1e-9);
  CHECK(config_entries(back) == config_entries(c));
  CHECK(config_entries(c).size() == config_keys().size());
}

TEST_CASE("format_number") {
  CHECK(format_number(435.0) == "435.0");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(257.38) == "257.38");
  CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_number(-2.0) == "-2.0");
  CHECK(format_number(1e300) == "1e+300");
  CHECK(std::stod(format_number(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("simulate: CSV to stdout with stable layout") {
  const Run r = cli({"simulate", "--set", "trials=3", "--set", "beta_grid=0,10",
                     "--set", "mode=discrete", "--set", "threads=1"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 1 + 2 * 6);
  CHECK(rows[0] == kReportCsvHeader);
  CHECK(rows[1].rfind("0.0,ArithmeticMean,", 0) == 0);
  CHECK(rows[3].rfind("0.0,BradleyTerry,", 0) == 0);
  CHECK(rows[3].find(",435.0,3,1") != std::string::npos);
  CHECK(rows[7].rfind("10.0,ArithmeticMean,", 0) == 0);
  CHECK(rows[12].rfind("10.0,TwoPhaseQuicksort,", 0) == 0);
}

TEST_CASE("simulate: file output, sidecar and determinism") {
  TempDir dir;
  const fs::path a = dir.path / "a.csv";
  const fs::path b = dir.path / "b.csv";
  const std::vector<std::string> common{"--set", "trials=4", "--set",
                                        "beta_grid=3", "--set", "n=10",
                                        "--set", "n_star=5"};
  auto args = [&](const fs::path& p) {
    std::vector<std::string> v{"simulate", "-o", p.string()};
    v.insert(v.end(), common.begin(), common.end());
    return v;
  };
  REQUIRE(cli(args(a)).code == 0);
  REQUIRE(cli(args(b)).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(fs::path(a.string() + ".config.json")) ==
        slurp(fs::path(b.string() + ".config.json")));

  const auto sidecar =
      nlohmann::json::parse(slurp(fs::path(a.string() + ".config.json")));
  CHECK(sidecar["config"]["n"] == "10");
  CHECK(sidecar["config"]["trials"] == "4");
  CHECK(sidecar.contains("notes"));
}

TEST_CASE("simulate: config file plus overrides") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg";
  std::ofstream(cfg) << "n = 6\nn_star = 2\ntrials = 2\nbeta_grid = 1\n"
                        "methods = Borda\n";
  const Run r =
      cli({"simulate", "--config", cfg.string(), "--set", "trials=5"});
  REQUIRE(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].rfind("1.0,Borda,", 0) == 0);
  CHECK(rows[1].find(",5,1") != std::string::npos);
}

TEST_CASE("simulate: JSON format") {
  const Run r = cli({"simulate", "-f", "json", "--set", "trials=2", "--set",
                     "beta_grid=5", "--set", "methods=BradleyTerry"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["method"] == "BradleyTerry");
  CHECK(j["rows"][0]["mean_comparisons"] == 435.0);
}

TEST_CASE("simulate: error exits") {
  const Run zero = cli({"simulate", "--set", "trials=0"});
  CHECK(zero.code == kExitConfigError);
  CHECK(zero.err.find("trials") != std::string::npos);

  const Run unknown = cli({"simulate", "--set", "colour=blue"});
  CHECK(unknown.code == kExitConfigError);
  CHECK(unknown.err.find("colour") != std::string::npos);

  CHECK(cli({"simulate", "--config", "/nonexistent/x.cfg"}).code ==
        kExitConfigError);
  CHECK(cli({"simulate", "--format", "xml"}).code == kExitConfigError);
  CHECK(cli({}).code == kExitConfigError);

  const Run io = cli({"simulate", "--set", "trials=1", "--set", "beta_grid=0",
                      "-o", "/nonexistent-dir/out.csv"});
  CHECK(io.code == kExitIoError);
}

TEST_CASE("validate") {
  const Run r = cli({"validate"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  for (const std::string& name : validation_check_names())
    CHECK(r.out.find("PASS " + name) != std::string::npos);

  const Run list = cli({"validate", "--list"});
  CHECK(list.code == kExitOk);
  CHECK(lines(list.out) == validation_check_names());
}

TEST_CASE("validate: a broken normal CDF is caught") {
  ValidationHooks broken = ValidationHooks::defaults();
  broken.win_probability = [](double v_i, double v_j, double, double) {
    return v_i > v_j ? 0.9 : 0.1;
  };
  const auto results = run_validation(broken);
  std::ostringstream out;
  CHECK_FALSE(report_validation(out, results));
  for (const CheckResult& r : results) {
    CAPTURE(r.name);
    CHECK(r.passed == (r.name.rfind("win_probability.", 0) != 0));
  }
}

TEST_CASE("trace: three-project fixture") {
  const Run r = cli({"trace", "--fixture", "three-project"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0.2024") != std::string::npos);
  CHECK(r.out.find("0.4338") != std::string::npos);
  CHECK(r.out.find("0.2397") != std::string::npos);
  CHECK(r.out.find("TwoPhaseBT") != std::string::npos);
  CHECK(r.out.find("phase 1") != std::string::npos);
  CHECK(r.out.find("phase 2") != std::string::npos);
}

TEST_CASE("trace: zero-noise trial has a step-function W'") {
  const Run r = cli({"trace", "--fixture", "zero-noise", "--set", "n=4",
                     "--set", "n_star=2", "--set", "methods=Quicksort"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("zero noise") != std::string::npos);
  CHECK(r.out.find("0.5") == std::string::npos);
}

TEST_CASE("trace: refuses large portfolios and bad indices") {
  const Run big = cli({"trace"});
  CHECK(big.code == kExitConfigError);
  CHECK(big.err.find("10") != std::string::npos);
  CHECK(cli({"trace", "--set", "n=5", "--set", "n_star=2", "--beta-index",
             "11"})
            .code == kExitConfigError);
}
