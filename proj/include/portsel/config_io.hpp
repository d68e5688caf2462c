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

// Flat key = value configuration for experiments.
//
//   # comment
//   n = 30
//   beta_grid = 0,1,2,3,4,5,6,7,8,9,10
//   mode = discrete
//
// Keys: n, N, n_star, beta_grid, trials, master_seed, mode, levels, methods,
// values, t_min, t_max, e_M, zero_noise, scheme, tolerance, max_iterations,
// threads. Unknown keys are rejected.

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "portsel/simulator.hpp"

namespace portsel {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

const std::vector<std::string_view>& config_keys();

// Applies one assignment; throws ConfigError naming the key.
void apply_setting(ExperimentConfig& config, std::string_view key,
                   std::string_view value);
// "key=value" form used on the command line.
void apply_override(ExperimentConfig& config, std::string_view assignment);

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config_file(const std::string& path);

// Validates the whole config, rethrowing UsageError as ConfigError.
void check_config(const ExperimentConfig& config);

// Inverse of apply_setting for every key, in config_keys() order.
std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& config);

}  // namespace portsel
