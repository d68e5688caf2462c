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

#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "doctest.h"
#include "portsel/errors.hpp"
#include "portsel/report_io.hpp"
#include "portsel/simulator.hpp"

using namespace portsel;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.projects = 8;
  c.n_star = 4;
  c.beta_grid = {0, 3, 10};
  c.trials = 12;
  c.seed = 99;
  c.threads = 1;
  return c;
}

std::string csv_of(const PerformanceReport& r) {
  std::ostringstream out;
  write_report_csv(out, r);
  return out.str();
}

PerformanceRow row(double beta, Method m, double mean, double se) {
  PerformanceRow r;
  r.beta = beta;
  r.method = m;
  r.mean_performance = mean;
  r.stderr_performance = se;
  r.trials = 100;
  return r;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.n_star = 31;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.beta_grid.clear();
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.methods.clear();
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.values = {1, 2};
  CHECK_THROWS_AS(c.validate(), UsageError);

  c = {};
  c.projects = 4;
  std::vector<double> expected{1, 2, 3, 4};
  CHECK(c.project_values() == expected);
}

TEST_CASE("trial seeds are distinct across the grid") {
  std::set<std::uint64_t> seeds;
  for (std::size_t b = 0; b < 11; ++b)
    for (std::size_t t = 0; t < 500; ++t) seeds.insert(trial_seed(1, b, t));
  CHECK(seeds.size() == 11 * 500);
  CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
  CHECK(trial_seed(1, 2, 3) != trial_seed(2, 2, 3));
  CHECK(trial_seed(1, 2, 3) != trial_seed(1, 3, 2));
}

TEST_CASE("mix64 matches the splitmix64 finalizer") {
  // Reference outputs of splitmix64 seeded with 0: the first two draws.
  CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(mix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("run_trial: zero noise reaches the ceiling") {
  ExperimentConfig c;
  c.zero_noise = true;
  for (std::size_t t = 0; t < 3; ++t) {
    for (const TrialResult& r : run_trial(c, 5, t)) {
      CAPTURE(method_name(r.method));
      if (r.method == Method::TwoPhaseBT) {
        CHECK(r.performance <= 345.0);
      } else {
        CHECK(r.performance == 345.0);
      }
    }
  }
}

TEST_CASE("run_trial: three-project micro case") {
  ExperimentConfig c;
  c.projects = 3;
  c.n_star = 2;
  c.beta_grid = {0};
  c.zero_noise = true;
  for (const TrialResult& r : run_trial(c, 0, 0)) CHECK(r.performance == 5.0);
}

TEST_CASE("run_trial: deterministic and one result per method") {
  const ExperimentConfig c = small_config();
  const auto a = run_trial(c, 1, 7);
  const auto b = run_trial(c, 1, 7);
  REQUIRE(a.size() == kAllMethods.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].performance == b[k].performance);
    CHECK(a[k].comparisons == b[k].comparisons);
    CHECK(a[k].beta == 3.0);
  }
}

TEST_CASE("run_trial: every method sees the same sample") {
  const ExperimentConfig c = small_config();
  const TrialDetail d = run_trial_detailed(c, 2, 4);
  ExperimentConfig only_bt = c;
  only_bt.methods = {Method::BradleyTerry};
  CHECK(run_trial_detailed(only_bt, 2, 4).sample == d.sample);
  CHECK(d.panel.beta == 10.0);
  for (std::size_t i = 0; i < d.portfolio.size(); ++i)
    for (std::size_t l = 0; l < d.panel.size(); ++l)
      CHECK(d.sample.sigma(i, l) ==
            std::abs(d.portfolio.projects[i].type - d.panel.expertise[l]));
}

TEST_CASE("run_trial: performance is bounded by the true top set") {
  const ExperimentConfig c = small_config();
  for (std::size_t t = 0; t < 20; ++t)
    for (const TrialResult& r : run_trial(c, t % 3, t)) {
      CHECK(r.performance > 0.0);
      CHECK(r.performance <= 5 + 6 + 7 + 8);
    }
}

TEST_CASE("beta = 0: identical expertise, identical uncertainty") {
  ExperimentConfig c;
  c.trials = 1;
  const TrialDetail d = run_trial_detailed(c, 0, 3);
  for (std::size_t i = 0; i < d.portfolio.size(); ++i)
    for (std::size_t l = 1; l < d.panel.size(); ++l)
      CHECK(d.sample.sigma(i, l) == d.sample.sigma(i, 0));
}

TEST_CASE("beta = 0: aggregated and single-agent probabilities agree in mean") {
  ExperimentConfig c;
  c.projects = 4;
  c.n_star = 2;
  double single = 0.0;
  double pooled = 0.0;
  const int trials = 4000;
  for (int t = 0; t < trials; ++t) {
    const TrialDetail d = run_trial_detailed(c, 0, t);
    std::vector<WinMatrix> agents;
    for (std::size_t l = 0; l < d.panel.size(); ++l)
      agents.push_back(agent_win_matrix(d.sample, l, c.mode));
    single += agents[0].weight(0, 1);
    pooled += aggregate_win_matrices(agents).weight(0, 1);
  }
  // Per-trial spread of one agent is at most 0.5, so 3 sigma < 0.03.
  CHECK(std::abs(single - pooled) / trials < 0.03);
}

TEST_CASE("run_experiment: shape, order and statistics") {
  ExperimentConfig c = small_config();
  c.methods = {Method::Quicksort, Method::ArithmeticMean, Method::Borda};
  const PerformanceReport r = run_experiment(c);
  REQUIRE(r.rows.size() == 9);
  const char* names[] = {"ArithmeticMean", "Borda", "Quicksort"};
  for (std::size_t k = 0; k < 9; ++k) {
    CHECK(r.rows[k].beta == c.beta_grid[k / 3]);
    CHECK(method_name(r.rows[k].method) == names[k % 3]);
    CHECK(r.rows[k].trials == 12);
    CHECK(r.rows[k].seed == 99);
  }

  // Recompute one row directly from the trials.
  std::vector<double> perf;
  double comparisons = 0.0;
  for (std::size_t t = 0; t < 12; ++t)
    for (const TrialResult& tr : run_trial(c, 2, t))
      if (tr.method == Method::Quicksort) {
        perf.push_back(tr.performance);
        comparisons += static_cast<double>(tr.comparisons);
      }
  const double mean = std::accumulate(perf.begin(), perf.end(), 0.0) / 12.0;
  double ss = 0.0;
  for (double p : perf) ss += (p - mean) * (p - mean);
  const PerformanceRow* q = r.find(10.0, Method::Quicksort);
  REQUIRE(q != nullptr);
  CHECK(q->mean_performance == doctest::Approx(mean).epsilon(1e-12));
  CHECK(q->stderr_performance ==
        doctest::Approx(std::sqrt(ss / 11.0) / std::sqrt(12.0)).epsilon(1e-12));
  CHECK(q->mean_comparisons == doctest::Approx(comparisons / 12.0));
  CHECK(r.find(10.0, Method::TwoPhaseBT) == nullptr);
}

TEST_CASE("run_experiment: single trial gives zero stderr") {
  ExperimentConfig c = small_config();
  c.trials = 1;
  c.beta_grid = {4};
  const PerformanceReport r = run_experiment(c);
  CHECK(r.rows.size() == kAllMethods.size());
  for (const PerformanceRow& row : r.rows) CHECK(row.stderr_performance == 0.0);
}

TEST_CASE("run_experiment: thread count does not change the report") {
  ExperimentConfig c = small_config();
  c.threads = 1;
  const std::string one = csv_of(run_experiment(c));
  c.threads = 8;
  CHECK(csv_of(run_experiment(c)) == one);
  c.threads = 3;
  CHECK(csv_of(run_experiment(c)) == one);
}

TEST_CASE("run_experiment: full Bradley-Terry always makes every comparison") {
  ExperimentConfig c;
  c.trials = 3;
  c.beta_grid = {0, 10};
  c.methods = {Method::BradleyTerry};
  c.mode = ProbabilityMode::discrete();
  for (const PerformanceRow& row : run_experiment(c).rows)
    CHECK(row.mean_comparisons == 435.0);
}

TEST_CASE("separation") {
  const PerformanceRow a = row(1, Method::Borda, 10.0, 0.3);
  const PerformanceRow b = row(1, Method::Quicksort, 9.0, 0.4);
  CHECK(separation(a, b) == doctest::Approx(2.0));
  CHECK(separation(b, a) == doctest::Approx(-2.0));
  const PerformanceRow flat = row(1, Method::Borda, 10.0, 0.0);
  CHECK(separation(flat, flat) == 0.0);
  CHECK(separation(flat, row(1, Method::Borda, 9.0, 0.0)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("ordering_checks") {
  PerformanceReport report;
  report.config.beta_grid = {2, 10};
  for (double beta : report.config.beta_grid)
    for (Method m : kAllMethods) report.rows.push_back(row(beta, m, 300, 1));

  SUBCASE("identical results establish nothing") {
    const auto findings = ordering_checks(report);
    CHECK(findings.size() == 6 + 2);
    for (const Finding& f : findings) CHECK_FALSE(f.passed);
  }

  SUBCASE("clear separation passes") {
    for (PerformanceRow& r : report.rows) {
      const bool value_based = r.method == Method::ArithmeticMean ||
                               r.method == Method::Borda;
      if (r.beta == 10 && !value_based) r.mean_performance = 310;
      if (r.beta == 2 && r.method == Method::TwoPhaseBT)
        r.mean_performance = 290;
    }
    for (const Finding& f : ordering_checks(report)) {
      CAPTURE(f.name);
      CHECK(f.passed);
      CHECK(f.z >= 3.0);
    }
  }

  SUBCASE("grid without both regimes is rejected") {
    report.config.beta_grid = {2};
    CHECK_THROWS_AS(ordering_checks(report), UsageError);
  }

  SUBCASE("missing method is rejected") {
    report.rows.pop_back();
    CHECK_THROWS_AS(ordering_checks(report), UsageError);
  }
}

TEST_CASE("improvement_checks") {
  PerformanceReport big, small;
  big.config.methods = small.config.methods = {Method::Borda, Method::Quicksort};
  big.rows = {row(5, Method::Borda, 310, 1), row(5, Method::Quicksort, 305, 1)};
  small.rows = {row(5, Method::Borda, 300, 1),
                row(5, Method::Quicksort, 304, 1)};
  const auto f = improvement_checks(big, small, 5, 2.0);
  REQUIRE(f.size() == 2);
  CHECK(f[0].passed);
  CHECK_FALSE(f[1].passed);
}
