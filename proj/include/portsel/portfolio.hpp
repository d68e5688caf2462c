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

// Projects, agent panels, noisy evaluations, and per-agent win probabilities.

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "portsel/win_matrix.hpp"

namespace portsel {

using Rng = std::mt19937_64;

struct Project {
  double type = 0.0;
  double value = 1.0;
};

struct Portfolio {
  std::vector<Project> projects;
  double t_min = 0.0;
  double t_max = 10.0;

  std::size_t size() const { return projects.size(); }
  // Throws UsageError unless n >= 1, every value > 0 and every type lies in
  // [t_min, t_max].
  void validate() const;

  // Types drawn uniformly from [t_min, t_max]; values taken as given.
  static Portfolio with_uniform_types(std::span<const double> values,
                                      double t_min, double t_max, Rng& rng);
};

// Agents with expertise evenly spaced over [e_m - beta, e_m + beta].
struct AgentPanel {
  std::vector<double> expertise;
  double beta = 0.0;
  double e_m = 0.0;

  std::size_t size() const { return expertise.size(); }
};

// e_l = e_m - beta (N + 1 - 2l) / (N - 1) for l = 1..N; a single agent sits
// at e_m.
AgentPanel make_panel(std::size_t agents, double beta, double e_m);

// Perceived values and their uncertainties, one row per project and one
// column per agent.
class EvaluationSample {
 public:
  EvaluationSample() = default;
  EvaluationSample(std::size_t projects, std::size_t agents);
  // Row-major n x N inputs, mainly for fixtures.
  static EvaluationSample from_rows(
      const std::vector<std::vector<double>>& perceived,
      const std::vector<std::vector<double>>& sigma);

  std::size_t projects() const { return n_; }
  std::size_t agents() const { return agents_; }

  double perceived(std::size_t i, std::size_t agent) const {
    return perceived_[i * agents_ + agent];
  }
  double sigma(std::size_t i, std::size_t agent) const {
    return sigma_[i * agents_ + agent];
  }
  void set(std::size_t i, std::size_t agent, double perceived, double sigma);

  friend bool operator==(const EvaluationSample&,
                         const EvaluationSample&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t agents_ = 0;
  std::vector<double> perceived_;
  std::vector<double> sigma_;
};

// v_il = v_i + eta_il with eta_il ~ Normal(0, sigma_il^2) and
// sigma_il = |t_i - e_l|. Draws project-major, one standard normal per
// (project, agent) even when sigma is 0.
EvaluationSample sample_evaluations(const Portfolio& portfolio,
                                    const AgentPanel& panel, Rng& rng);

// Every agent perceives the true values with zero uncertainty.
EvaluationSample noiseless_evaluations(const Portfolio& portfolio,
                                       std::size_t agents);

class ProbabilityMode {
 public:
  enum class Kind { Continuous, Discrete };

  static ProbabilityMode continuous();
  // Levels must be sorted, inside (0, 1) and symmetric about 0.5.
  static ProbabilityMode discrete(std::vector<double> levels);
  static ProbabilityMode discrete() { return discrete(default_levels()); }
  // {0.01, 0.1, 0.2, ..., 0.9, 0.99}
  static std::vector<double> default_levels();

  Kind kind() const { return kind_; }
  bool is_discrete() const { return kind_ == Kind::Discrete; }
  const std::vector<double>& levels() const { return levels_; }

  friend bool operator==(const ProbabilityMode&,
                         const ProbabilityMode&) = default;

 private:
  Kind kind_ = Kind::Continuous;
  std::vector<double> levels_;
};

// Phi((v_i - v_j) / sqrt(sigma_i^2 + sigma_j^2)); with both sigmas zero the
// limit 1, 0 or 0.5.
double win_probability(double v_i, double v_j, double sigma_i, double sigma_j);

// Continuous: identity. Discrete: nearest level, ties toward the level
// closer to 0.5. Accepts w in [0, 1].
double quantize(double w, const ProbabilityMode& mode);

// Quantized win probability of i over j as assessed by one agent.
double agent_pair_probability(const EvaluationSample& sample,
                              std::size_t agent, std::size_t i, std::size_t j,
                              const ProbabilityMode& mode);

// Agent's win matrix over `pairs` (all pairs when empty). For each pair
// {i, j} with i < j, w_ij is computed and w_ji = 1 - w_ij.
WinMatrix agent_win_matrix(const EvaluationSample& sample, std::size_t agent,
                           const ProbabilityMode& mode,
                           const std::optional<std::vector<Pair>>& pairs = {});

// Entrywise mean over agents. All matrices must share size and mask.
WinMatrix aggregate_win_matrices(std::span<const WinMatrix> matrices);

}  // namespace portsel
