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

#include <cstddef>
#include <optional>
#include <ostream>

#include "portsel/simulator.hpp"

namespace portsel {

inline constexpr std::size_t kMaxTraceProjects = 10;

// Three projects seen by one agent: values (1, 3.5, 4), sigmas (3, 0.1, 3).
EvaluationSample three_project_fixture();

// Dumps perceived values, per-agent and aggregated win matrices, and every
// method's ranking, selection and compared pairs. `truth` adds the true
// values and the realized performance when known.
void trace_sample(std::ostream& out, const EvaluationSample& sample,
                  const ProbabilityMode& mode, std::size_t n_star, Rng& rng,
                  const SolverConfig& solver = {},
                  const std::optional<Portfolio>& truth = std::nullopt);

// One simulator trial, traced. Throws UsageError for n > kMaxTraceProjects.
void trace_trial(std::ostream& out, const ExperimentConfig& config,
                 std::size_t beta_index, std::size_t trial_index);

}  // namespace portsel
