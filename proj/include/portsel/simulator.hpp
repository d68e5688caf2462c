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

#pragma once

// Monte Carlo harness: for every knowledge breadth on a grid, draws
// independent trials (project types plus one evaluation sample), runs every
// configured method on that same sample and averages the true value of the
// selected projects.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "portsel/aggregation.hpp"
#include "portsel/bradley_terry.hpp"
#include "portsel/portfolio.hpp"

namespace portsel {

struct ExperimentConfig {
  std::size_t projects = 30;
  std::size_t agents = 3;
  std::size_t n_star = 15;
  std::vector<double> beta_grid = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  ProbabilityMode mode = ProbabilityMode::continuous();
  std::vector<Method> methods = {kAllMethods.begin(), kAllMethods.end()};
  // Explicit true values; empty means v_i = i.
  std::vector<double> values;
  double t_min = 0.0;
  double t_max = 10.0;
  double e_m = 5.0;
  // Test hook: agents perceive true values with sigma = 0.
  bool zero_noise = false;
  SolverConfig solver;
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;

  void validate() const;
  std::vector<double> project_values() const;
};

struct TrialResult {
  double beta = 0.0;
  Method method = Method::ArithmeticMean;
  double performance = 0.0;
  std::size_t comparisons = 0;
};

// Everything one trial produced, for tracing.
struct TrialDetail {
  std::uint64_t seed = 0;
  Portfolio portfolio;
  AgentPanel panel;
  EvaluationSample sample;
  std::vector<SelectionResult> selections;
  std::vector<TrialResult> results;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);
// Seed of trial `trial_index` at grid position `beta_index`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t beta_index,
                         std::size_t trial_index);

// Sum of the true values of the selected projects.
double selection_value(const Portfolio& portfolio,
                       const std::vector<std::size_t>& selected);

TrialDetail run_trial_detailed(const ExperimentConfig& config,
                               std::size_t beta_index,
                               std::size_t trial_index);
// One result per configured method, in config.methods order.
std::vector<TrialResult> run_trial(const ExperimentConfig& config,
                                   std::size_t beta_index,
                                   std::size_t trial_index);

struct PerformanceRow {
  double beta = 0.0;
  Method method = Method::ArithmeticMean;
  double mean_performance = 0.0;
  double stderr_performance = 0.0;
  double mean_comparisons = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct PerformanceReport {
  ExperimentConfig config;
  // Beta-major; methods in ascending name order within each beta.
  std::vector<PerformanceRow> rows;

  // nullptr when absent.
  const PerformanceRow* find(double beta, Method method) const;
};

PerformanceReport run_experiment(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Statistical checks over reports.

struct Finding {
  std::string name;
  bool passed = false;
  // Difference of means divided by the pooled standard error.
  double z = 0.0;
};

// (mean_a - mean_b) / sqrt(se_a^2 + se_b^2). Zero pooled error yields +inf,
// -inf or 0 according to the sign of the difference.
double separation(const PerformanceRow& a, const PerformanceRow& b);

struct OrderingCriteria {
  // Where the pairwise methods must beat the value-based ones.
  std::vector<double> high_betas;
  // Where TwoPhaseBT must trail the value-based ones.
  std::vector<double> low_betas;
  double min_z = 3.0;

  // High: every grid beta >= 8. Low: every grid beta <= 4.
  static OrderingCriteria defaults_for(const PerformanceReport& report);
};

// (i) at each high beta, Quicksort, TwoPhaseQuicksort and BradleyTerry each
// exceed ArithmeticMean and Borda by min_z pooled standard errors;
// (ii) at each low beta, TwoPhaseBT trails both by min_z.
// Throws UsageError when the report lacks a needed method or beta.
std::vector<Finding> ordering_checks(const PerformanceReport& report,
                                     const OrderingCriteria& criteria);
std::vector<Finding> ordering_checks(const PerformanceReport& report);

// For every method present in both reports: mean performance at `beta` in
// `larger` exceeds that in `smaller` by min_z pooled standard errors.
std::vector<Finding> improvement_checks(const PerformanceReport& larger,
                                        const PerformanceReport& smaller,
                                        double beta, double min_z);

}  // namespace portsel
