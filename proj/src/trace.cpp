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

#include "portsel/trace.hpp"

#include <iomanip>
#include <string>

#include "portsel/errors.hpp"

namespace portsel {

namespace {

// Projects are shown 1-based.
std::string label(std::size_t i) { return std::to_string(i + 1); }

void print_list(std::ostream& out, const std::vector<std::size_t>& xs) {
  out << '(';
  for (std::size_t k = 0; k < xs.size(); ++k) {
    out << (k ? ", " : "") << label(xs[k]);
  }
  out << ')';
}

void print_pairs(std::ostream& out, const std::vector<Pair>& pairs) {
  out << '{';
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    out << (k ? ", " : "") << '{' << label(pairs[k].first) << ','
        << label(pairs[k].second) << '}';
  }
  out << "}  (" << pairs.size() << " pairs)";
}

void print_matrix(std::ostream& out, const WinMatrix& w) {
  out << "          ";
  for (std::size_t j = 0; j < w.size(); ++j) {
    out << std::setw(10) << label(j);
  }
  out << '\n';
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << std::setw(10) << label(i);
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (i == j || !w.sampled(i, j)) {
        out << std::setw(10) << '.';
      } else {
        out << std::setw(10) << std::fixed << std::setprecision(6)
            << w.weight(i, j);
      }
    }
    out << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void print_sample(std::ostream& out, const EvaluationSample& sample,
                  const ProbabilityMode& mode,
                  const std::optional<Portfolio>& truth) {
  out << "projects n=" << sample.projects() << ", agents N=" << sample.agents()
      << ", mode=" << (mode.is_discrete() ? "discrete" : "continuous")
      << '\n';
  out << "perceived values v_il (sigma_il)\n";
  for (std::size_t i = 0; i < sample.projects(); ++i) {
    out << "  project " << std::setw(2) << label(i);
    if (truth) {
      out << "  true v=" << truth->projects[i].value
          << " type=" << std::setprecision(4) << truth->projects[i].type
          << std::setprecision(6);
    }
    out << "  |";
    for (std::size_t l = 0; l < sample.agents(); ++l) {
      out << "  " << std::setprecision(5) << sample.perceived(i, l) << " ("
          << sample.sigma(i, l) << ')';
    }
    out << std::setprecision(6) << '\n';
  }

  std::vector<WinMatrix> per_agent;
  for (std::size_t l = 0; l < sample.agents(); ++l) {
    per_agent.push_back(agent_win_matrix(sample, l, mode));
    out << "W^" << l + 1 << " (agent " << l + 1 << ")\n";
    print_matrix(out, per_agent.back());
  }
  out << "W' (aggregated)\n";
  print_matrix(out, aggregate_win_matrices(per_agent));
}

void print_selections(std::ostream& out,
                      const std::vector<SelectionResult>& selections,
                      const std::optional<Portfolio>& truth) {
  for (const SelectionResult& s : selections) {
    out << "== " << method_name(s.method) << '\n';
    out << "  ranking (best first) ";
    print_list(out, s.ranking);
    out << "\n  selected ";
    print_list(out, s.selected);
    if (truth) out << "  performance " << selection_value(*truth, s.selected);
    out << '\n';
    if (!s.scores.empty()) {
      out << "  scores";
      for (double x : s.scores) out << ' ' << std::setprecision(6) << x;
      out << '\n';
    }
    if (s.strengths) {
      out << "  solver iterations " << s.strengths->iterations
          << (s.strengths->converged ? " (converged)" : " (not converged)")
          << (s.strengths->saturated ? " saturated" : "") << '\n';
    }
    if (!s.phase1_pairs.empty() || !s.phase2_pairs.empty()) {
      out << "  phase 1 pairs ";
      print_pairs(out, s.phase1_pairs);
      out << "\n  phase 2 pairs ";
      print_pairs(out, s.phase2_pairs);
      out << '\n';
    }
    out << "  compared pairs ";
    print_pairs(out, s.comparisons.pairs());
    out << '\n';
  }
}

}  // namespace

EvaluationSample three_project_fixture() {
  return EvaluationSample::from_rows({{1.0}, {3.5}, {4.0}},
                                     {{3.0}, {0.1}, {3.0}});
}

void trace_sample(std::ostream& out, const EvaluationSample& sample,
                  const ProbabilityMode& mode, std::size_t n_star, Rng& rng,
                  const SolverConfig& solver,
                  const std::optional<Portfolio>& truth) {
  if (sample.projects() > kMaxTraceProjects) {
    throw UsageError("trace is limited to " +
                     std::to_string(kMaxTraceProjects) + " projects");
  }
  print_sample(out, sample, mode, truth);
  std::vector<SelectionResult> selections;
  for (Method m : kAllMethods) {
    selections.push_back(run_method(m, sample, mode, n_star, rng, solver));
  }
  print_selections(out, selections, truth);
}

void trace_trial(std::ostream& out, const ExperimentConfig& config,
                 std::size_t beta_index, std::size_t trial_index) {
  if (config.projects > kMaxTraceProjects) {
    throw UsageError("trace is limited to " +
                     std::to_string(kMaxTraceProjects) + " projects, got n=" +
                     std::to_string(config.projects));
  }
  config.validate();
  const TrialDetail d = run_trial_detailed(config, beta_index, trial_index);
  out << "trial " << trial_index << " at beta=" << config.beta_grid[beta_index]
      << " seed=" << d.seed << (config.zero_noise ? " (zero noise)" : "")
      << '\n';
  out << "expertise";
  for (double e : d.panel.expertise) out << ' ' << e;
  out << '\n';
  print_sample(out, d.sample, config.mode, d.portfolio);
  print_selections(out, d.selections, d.portfolio);
}

}  // namespace portsel
