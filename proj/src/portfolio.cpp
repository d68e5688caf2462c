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

#include "portsel/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "portsel/errors.hpp"

namespace portsel {

void Portfolio::validate() const {
  if (projects.empty()) throw UsageError("portfolio has no projects");
  if (!(t_min <= t_max)) throw UsageError("portfolio needs t_min <= t_max");
  for (std::size_t i = 0; i < projects.size(); ++i) {
    const Project& p = projects[i];
    if (!(p.value > 0.0)) {
      throw UsageError("project " + std::to_string(i + 1) +
                       " has a nonpositive value");
    }
    if (!(p.type >= t_min && p.type <= t_max)) {
      throw UsageError("project " + std::to_string(i + 1) +
                       " has a type outside [t_min, t_max]");
    }
  }
}

Portfolio Portfolio::with_uniform_types(std::span<const double> values,
                                        double t_min, double t_max, Rng& rng) {
  Portfolio p;
  p.t_min = t_min;
  p.t_max = t_max;
  std::uniform_real_distribution<double> type(t_min, t_max);
  p.projects.reserve(values.size());
  for (double v : values) p.projects.push_back({type(rng), v});
  p.validate();
  return p;
}

AgentPanel make_panel(std::size_t agents, double beta, double e_m) {
  if (agents == 0) throw UsageError("panel needs at least one agent");
  if (!(beta >= 0.0)) throw UsageError("knowledge breadth must be >= 0");
  AgentPanel panel;
  panel.beta = beta;
  panel.e_m = e_m;
  panel.expertise.resize(agents, e_m);
  if (agents == 1) return panel;
  const double n = static_cast<double>(agents);
  for (std::size_t l = 1; l <= agents; ++l) {
    const double offset = (n + 1.0 - 2.0 * static_cast<double>(l)) / (n - 1.0);
    panel.expertise[l - 1] = e_m - offset * beta;
  }
  return panel;
}

EvaluationSample::EvaluationSample(std::size_t projects, std::size_t agents)
    : n_(projects),
      agents_(agents),
      perceived_(projects * agents, 0.0),
      sigma_(projects * agents, 0.0) {
  if (projects == 0 || agents == 0) {
    throw UsageError("evaluation sample needs projects and agents");
  }
}

EvaluationSample EvaluationSample::from_rows(
    const std::vector<std::vector<double>>& perceived,
    const std::vector<std::vector<double>>& sigma) {
  if (perceived.empty() || perceived.size() != sigma.size()) {
    throw UsageError("perceived and sigma must have the same project count");
  }
  const std::size_t agents = perceived.front().size();
  EvaluationSample s(perceived.size(), agents);
  for (std::size_t i = 0; i < perceived.size(); ++i) {
    if (perceived[i].size() != agents || sigma[i].size() != agents) {
      throw UsageError("ragged evaluation rows");
    }
    for (std::size_t l = 0; l < agents; ++l) {
      s.set(i, l, perceived[i][l], sigma[i][l]);
    }
  }
  return s;
}

void EvaluationSample::set(std::size_t i, std::size_t agent, double perceived,
                           double sigma) {
  if (i >= n_ || agent >= agents_) {
    throw UsageError("evaluation index out of range");
  }
  if (!(sigma >= 0.0)) throw UsageError("sigma must be >= 0");
  perceived_[i * agents_ + agent] = perceived;
  sigma_[i * agents_ + agent] = sigma;
}

EvaluationSample sample_evaluations(const Portfolio& portfolio,
                                    const AgentPanel& panel, Rng& rng) {
  EvaluationSample s(portfolio.size(), panel.size());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < portfolio.size(); ++i) {
    const Project& p = portfolio.projects[i];
    for (std::size_t l = 0; l < panel.size(); ++l) {
      const double sigma = std::abs(p.type - panel.expertise[l]);
      const double z = normal(rng);
      s.set(i, l, sigma == 0.0 ? p.value : p.value + sigma * z, sigma);
    }
  }
  return s;
}

EvaluationSample noiseless_evaluations(const Portfolio& portfolio,
                                       std::size_t agents) {
  EvaluationSample s(portfolio.size(), agents);
  for (std::size_t i = 0; i < portfolio.size(); ++i) {
    for (std::size_t l = 0; l < agents; ++l) {
      s.set(i, l, portfolio.projects[i].value, 0.0);
    }
  }
  return s;
}

ProbabilityMode ProbabilityMode::continuous() { return ProbabilityMode{}; }

ProbabilityMode ProbabilityMode::discrete(std::vector<double> levels) {
  if (levels.empty()) throw UsageError("discrete mode needs levels");
  if (!std::is_sorted(levels.begin(), levels.end())) {
    throw UsageError("discrete levels must be sorted");
  }
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!(levels[k] > 0.0 && levels[k] < 1.0)) {
      throw UsageError("discrete levels must lie in (0, 1)");
    }
    const double mirror = levels[levels.size() - 1 - k];
    if (std::abs(levels[k] + mirror - 1.0) > 1e-12) {
      throw UsageError("discrete levels must be symmetric about 0.5");
    }
  }
  ProbabilityMode mode;
  mode.kind_ = Kind::Discrete;
  mode.levels_ = std::move(levels);
  return mode;
}

std::vector<double> ProbabilityMode::default_levels() {
  return {0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
}

double win_probability(double v_i, double v_j, double sigma_i,
                       double sigma_j) {
  const double scale = std::hypot(sigma_i, sigma_j);
  if (scale == 0.0) {
    if (v_i > v_j) return 1.0;
    if (v_i < v_j) return 0.0;
    return 0.5;
  }
  // Phi(z) = erfc(-z / sqrt 2) / 2 keeps full relative precision in the tail.
  const double z = (v_i - v_j) / scale;
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double quantize(double w, const ProbabilityMode& mode) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw UsageError("probability to quantize lies outside [0, 1]");
  }
  if (!mode.is_discrete()) return w;
  const auto& levels = mode.levels();
  double best = levels.front();
  for (double q : levels) {
    const double d = std::abs(w - q);
    const double d_best = std::abs(w - best);
    if (d < d_best ||
        (d == d_best && std::abs(q - 0.5) < std::abs(best - 0.5))) {
      best = q;
    }
  }
  return best;
}

double agent_pair_probability(const EvaluationSample& sample,
                              std::size_t agent, std::size_t i, std::size_t j,
                              const ProbabilityMode& mode) {
  return quantize(win_probability(sample.perceived(i, agent),
                                  sample.perceived(j, agent),
                                  sample.sigma(i, agent),
                                  sample.sigma(j, agent)),
                  mode);
}

WinMatrix agent_win_matrix(const EvaluationSample& sample, std::size_t agent,
                           const ProbabilityMode& mode,
                           const std::optional<std::vector<Pair>>& pairs) {
  if (agent >= sample.agents()) throw UsageError("agent index out of range");
  const std::size_t n = sample.projects();
  WinMatrix w(n);
  auto fill = [&](std::size_t i, std::size_t j) {
    w.set_probability(i, j, agent_pair_probability(sample, agent, i, j, mode));
  };
  if (pairs) {
    for (const Pair& p : *pairs) {
      const Pair q = Pair::of(p.first, p.second);
      if (q.second >= n || q.first == q.second) {
        throw UsageError("requested pair out of range");
      }
      fill(q.first, q.second);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) fill(i, j);
    }
  }
  return w;
}

WinMatrix aggregate_win_matrices(std::span<const WinMatrix> matrices) {
  if (matrices.empty()) throw UsageError("nothing to aggregate");
  const std::size_t n = matrices.front().size();
  for (const WinMatrix& m : matrices) {
    if (m.size() != n) throw UsageError("win matrices differ in size");
  }
  const double count = static_cast<double>(matrices.size());
  WinMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool sampled = matrices.front().sampled(i, j);
      double sum_ij = 0.0;
      double sum_ji = 0.0;
      for (const WinMatrix& m : matrices) {
        if (m.sampled(i, j) != sampled) {
          throw UsageError("win matrices were sampled on different pairs");
        }
        sum_ij += m.weight(i, j);
        sum_ji += m.weight(j, i);
      }
      if (sampled) out.set(i, j, sum_ij / count, sum_ji / count);
    }
  }
  return out;
}

}  // namespace portsel
