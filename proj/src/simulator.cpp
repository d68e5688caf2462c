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

#include "portsel/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "portsel/errors.hpp"

namespace portsel {

namespace {

// Streams split off a trial seed.
constexpr std::uint64_t kSampleStream = 0;
constexpr std::uint64_t kMethodStream = 1;

std::vector<Method> sorted_by_name(std::vector<Method> methods) {
  std::sort(methods.begin(), methods.end(), [](Method a, Method b) {
    return method_name(a) < method_name(b);
  });
  return methods;
}

std::string beta_label(double beta) {
  std::ostringstream out;
  out << beta;
  return out.str();
}

const PerformanceRow& require_row(const PerformanceReport& report, double beta,
                                  Method method) {
  const PerformanceRow* row = report.find(beta, method);
  if (row == nullptr) {
    throw UsageError("report has no row for " +
                     std::string(method_name(method)) + " at beta " +
                     beta_label(beta));
  }
  return *row;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (projects < 1) throw UsageError("n must be >= 1");
  if (agents < 1) throw UsageError("N must be >= 1");
  if (n_star < 1 || n_star > projects) {
    throw UsageError("n_star must lie in [1, n]");
  }
  if (beta_grid.empty()) throw UsageError("beta_grid must not be empty");
  for (double b : beta_grid) {
    if (!(b >= 0.0) || std::isinf(b)) {
      throw UsageError("beta values must be finite and >= 0");
    }
  }
  if (trials < 1) throw UsageError("trials must be >= 1");
  if (methods.empty()) throw UsageError("at least one method is required");
  if (!values.empty() && values.size() != projects) {
    throw UsageError("values must list exactly n entries");
  }
  for (double v : values) {
    if (!(v > 0.0)) throw UsageError("project values must be > 0");
  }
  if (!(t_min <= t_max)) throw UsageError("t_min must not exceed t_max");
  solver.validate();
}

std::vector<double> ExperimentConfig::project_values() const {
  if (!values.empty()) return values;
  std::vector<double> v(projects);
  std::iota(v.begin(), v.end(), 1.0);
  return v;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t beta_index,
                         std::size_t trial_index) {
  std::uint64_t h = mix64(master_seed);
  h = mix64(h ^ static_cast<std::uint64_t>(beta_index));
  return mix64(h ^ static_cast<std::uint64_t>(trial_index));
}

double selection_value(const Portfolio& portfolio,
                       const std::vector<std::size_t>& selected) {
  double total = 0.0;
  for (std::size_t i : selected) total += portfolio.projects.at(i).value;
  return total;
}

TrialDetail run_trial_detailed(const ExperimentConfig& config,
                               std::size_t beta_index,
                               std::size_t trial_index) {
  if (beta_index >= config.beta_grid.size()) {
    throw UsageError("beta index out of range");
  }
  const double beta = config.beta_grid[beta_index];
  TrialDetail d;
  d.seed = trial_seed(config.seed, beta_index, trial_index);

  Rng sample_rng(mix64(d.seed ^ kSampleStream));
  const std::vector<double> values = config.project_values();
  d.portfolio = Portfolio::with_uniform_types(values, config.t_min,
                                              config.t_max, sample_rng);
  d.panel = make_panel(config.agents, beta, config.e_m);
  d.sample = config.zero_noise
                 ? noiseless_evaluations(d.portfolio, config.agents)
                 : sample_evaluations(d.portfolio, d.panel, sample_rng);

  Rng method_rng(mix64(d.seed ^ kMethodStream));
  for (Method m : config.methods) {
    SelectionResult s = run_method(m, d.sample, config.mode, config.n_star,
                                   method_rng, config.solver);
    d.results.push_back({beta, m, selection_value(d.portfolio, s.selected),
                         s.comparisons.count()});
    d.selections.push_back(std::move(s));
  }
  return d;
}

std::vector<TrialResult> run_trial(const ExperimentConfig& config,
                                   std::size_t beta_index,
                                   std::size_t trial_index) {
  return run_trial_detailed(config, beta_index, trial_index).results;
}

const PerformanceRow* PerformanceReport::find(double beta,
                                              Method method) const {
  for (const PerformanceRow& r : rows) {
    if (r.beta == beta && r.method == method) return &r;
  }
  return nullptr;
}

PerformanceReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t betas = config.beta_grid.size();
  const std::size_t trials = config.trials;
  const std::size_t methods = config.methods.size();
  const std::size_t tasks = betas * trials;

  // [beta][trial][method]
  std::vector<TrialResult> results(tasks * methods);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t task = next++; task < tasks; task = next++) {
      const std::size_t b = task / trials;
      const std::size_t t = task % trials;
      std::vector<TrialResult> r = run_trial(config, b, t);
      std::copy(r.begin(), r.end(),
                results.begin() + static_cast<long>(task * methods));
    }
  };
  unsigned threads = config.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(tasks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }

  PerformanceReport report;
  report.config = config;
  const std::vector<Method> order = sorted_by_name(config.methods);
  const double count = static_cast<double>(trials);
  for (std::size_t b = 0; b < betas; ++b) {
    for (Method m : order) {
      const std::size_t k = static_cast<std::size_t>(
          std::find(config.methods.begin(), config.methods.end(), m) -
          config.methods.begin());
      double sum = 0.0;
      double comparisons = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const TrialResult& r = results[(b * trials + t) * methods + k];
        sum += r.performance;
        comparisons += static_cast<double>(r.comparisons);
      }
      const double mean = sum / count;
      double squares = 0.0;
      for (std::size_t t = 0; t < trials; ++t) {
        const double d =
            results[(b * trials + t) * methods + k].performance - mean;
        squares += d * d;
      }
      const double stderr_mean =
          trials > 1 ? std::sqrt(squares / (count - 1.0)) / std::sqrt(count)
                     : 0.0;
      report.rows.push_back({config.beta_grid[b], m, mean, stderr_mean,
                             comparisons / count, trials, config.seed});
    }
  }
  return report;
}

double separation(const PerformanceRow& a, const PerformanceRow& b) {
  const double diff = a.mean_performance - b.mean_performance;
  const double pooled = std::hypot(a.stderr_performance, b.stderr_performance);
  if (pooled == 0.0) {
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity();
  }
  return diff / pooled;
}

OrderingCriteria OrderingCriteria::defaults_for(
    const PerformanceReport& report) {
  OrderingCriteria c;
  for (double b : report.config.beta_grid) {
    if (b >= 8.0) c.high_betas.push_back(b);
    if (b <= 4.0) c.low_betas.push_back(b);
  }
  return c;
}

std::vector<Finding> ordering_checks(const PerformanceReport& report,
                                     const OrderingCriteria& criteria) {
  if (criteria.high_betas.empty() || criteria.low_betas.empty()) {
    throw UsageError(
        "ordering checks need at least one high and one low beta");
  }
  constexpr Method kValueBased[] = {Method::ArithmeticMean, Method::Borda};
  constexpr Method kPairwise[] = {Method::Quicksort, Method::TwoPhaseQuicksort,
                                  Method::BradleyTerry};
  std::vector<Finding> findings;
  auto add = [&](double beta, Method better, Method worse) {
    const double z = separation(require_row(report, beta, better),
                                require_row(report, beta, worse));
    findings.push_back({std::string(method_name(better)) + " > " +
                            std::string(method_name(worse)) + " at beta " +
                            beta_label(beta),
                        z >= criteria.min_z, z});
  };
  for (double beta : criteria.high_betas) {
    for (Method better : kPairwise) {
      for (Method worse : kValueBased) add(beta, better, worse);
    }
  }
  for (double beta : criteria.low_betas) {
    for (Method better : kValueBased) add(beta, better, Method::TwoPhaseBT);
  }
  return findings;
}

std::vector<Finding> ordering_checks(const PerformanceReport& report) {
  return ordering_checks(report, OrderingCriteria::defaults_for(report));
}

std::vector<Finding> improvement_checks(const PerformanceReport& larger,
                                        const PerformanceReport& smaller,
                                        double beta, double min_z) {
  std::vector<Finding> findings;
  for (Method m : sorted_by_name(larger.config.methods)) {
    const PerformanceRow* big = larger.find(beta, m);
    const PerformanceRow* small = smaller.find(beta, m);
    if (big == nullptr || small == nullptr) continue;
    const double z = separation(*big, *small);
    findings.push_back({std::string(method_name(m)) + " N=" +
                            std::to_string(larger.config.agents) + " > N=" +
                            std::to_string(smaller.config.agents) +
                            " at beta " + beta_label(beta),
                        z >= min_z, z});
  }
  if (findings.empty()) {
    throw UsageError("reports share no method at beta " + beta_label(beta));
  }
  return findings;
}

}  // namespace portsel
