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

#include "portsel/validation.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include "portsel/aggregation.hpp"
#include "portsel/portfolio.hpp"
#include "portsel/simulator.hpp"

namespace portsel {

namespace {

// The reference probabilities are quoted to four decimals.
constexpr double kQuotedTolerance = 1e-4;
// Means of decimal inputs are exact up to double rounding.
constexpr double kRoundingTolerance = 1e-15;

struct Check {
  const char* name;
  CheckResult (*run)(const ValidationHooks&);
};

CheckResult near(double got, double want, double tol) {
  std::ostringstream detail;
  detail.precision(17);
  detail << "got " << got;
  detail.precision(6);
  detail << ", want " << want << " +/- " << tol;
  return {"", std::abs(got - want) <= tol, detail.str()};
}

CheckResult probability_check(const ValidationHooks& h,
                              double v_i, double v_j, double s_i, double s_j,
                              double want) {
  return near(h.win_probability(v_i, v_j, s_i, s_j), want,
              kQuotedTolerance);
}

CheckResult aggregate_check(std::vector<double> agent_p,
                            double want) {
  std::vector<WinMatrix> per_agent;
  for (double p : agent_p) {
    WinMatrix w(2);
    w.set_probability(0, 1, p);
    per_agent.push_back(w);
  }
  return near(aggregate_win_matrices(per_agent).weight(0, 1), want,
              kRoundingTolerance);
}

// Methods listed in `exempt` only have to stay at or below `want`.
CheckResult all_methods_score(const std::vector<double>& got, double want,
                              std::initializer_list<Method> exempt = {}) {
  std::ostringstream detail;
  bool ok = got.size() == kAllMethods.size();
  for (std::size_t k = 0; k < got.size(); ++k) {
    const Method m = kAllMethods[k];
    const bool capped = std::find(exempt.begin(), exempt.end(), m) !=
                        exempt.end();
    detail << method_name(m) << '=' << got[k] << (capped ? "* " : " ");
    ok = ok && (capped ? got[k] <= want : got[k] == want);
  }
  detail << "want " << want;
  if (exempt.size() != 0) detail << ", * at most";
  return {"", ok, detail.str()};
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"win_probability.w12=0.2024",
       [](const ValidationHooks& h) {
         return probability_check(h, 1.0, 3.5,
                                  3.0, 0.1, 0.2024);
       }},
      {"win_probability.w23=0.4338",
       [](const ValidationHooks& h) {
         return probability_check(h, 3.5, 4.0,
                                  0.1, 3.0, 0.4338);
       }},
      {"win_probability.w13=0.2397",
       [](const ValidationHooks& h) {
         return probability_check(h, 1.0, 4.0,
                                  3.0, 3.0, 0.2397);
       }},
      {"aggregate.outlier=0.46",
       [](const ValidationHooks&) {
         return aggregate_check({0.98, 0.2, 0.2},
                                0.46);
       }},
      {"aggregate.intensity=0.63",
       [](const ValidationHooks&) {
         return aggregate_check({0.8, 0.46}, 0.63);
       }},
      {"zero_noise.performance=345",
       [](const ValidationHooks&) {
         ExperimentConfig c;
         c.zero_noise = true;
         std::vector<double> got;
         for (const TrialResult& r : run_trial(c, 0, 0)) {
           got.push_back(r.performance);
         }
         // Two cycles rarely contain every comparison that separates the
         // true top half, so TwoPhaseBT is only held to the ceiling.
         return all_methods_score(got, 345.0, {Method::TwoPhaseBT});
       }},
      {"micro_case.performance=5",
       [](const ValidationHooks&) {
         Portfolio p;
         p.projects = {{5.0, 1.0}, {5.0, 2.0}, {5.0, 3.0}};
         const EvaluationSample s = noiseless_evaluations(p, 3);
         Rng rng(7);
         std::vector<double> got;
         for (Method m : kAllMethods) {
           got.push_back(selection_value(
               p, run_method(m, s, ProbabilityMode::continuous(), 2, rng)
                      .selected));
         }
         return all_methods_score(got, 5.0);
       }},
      {"bradley_terry.comparisons=435",
       [](const ValidationHooks&) {
         ExperimentConfig c;
         c.mode = ProbabilityMode::discrete();
         c.methods = {Method::BradleyTerry};
         const TrialResult r = run_trial(c, 0, 0).front();
         return CheckResult{"", r.comparisons == 435,
                            "got " + std::to_string(r.comparisons)};
       }},
  };
  return all;
}

}  // namespace

ValidationHooks ValidationHooks::defaults() {
  ValidationHooks h;
  h.win_probability = [](double v_i, double v_j, double s_i, double s_j) {
    return portsel::win_probability(v_i, v_j, s_i, s_j);
  };
  return h;
}

std::vector<std::string> validation_check_names() {
  std::vector<std::string> names;
  for (const Check& c : checks()) names.emplace_back(c.name);
  return names;
}

std::vector<CheckResult> run_validation(const ValidationHooks& hooks) {
  std::vector<CheckResult> results;
  for (const Check& c : checks()) {
    try {
      CheckResult r = c.run(hooks);
      r.name = c.name;
      results.push_back(std::move(r));
    } catch (const std::exception& e) {
      results.push_back({c.name, false, std::string("threw: ") + e.what()});
    }
  }
  return results;
}

bool report_validation(std::ostream& out,
                       const std::vector<CheckResult>& results) {
  bool ok = true;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << "  (" << r.detail
        << ")\n";
    ok = ok && r.passed;
  }
  out << (ok ? "all checks passed" : "validation FAILED") << '\n';
  return ok;
}

}  // namespace portsel
