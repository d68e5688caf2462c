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

// Built-in regression checks against the reference point values.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace portsel {

struct ValidationHooks {
  // Replaceable for fault-injection tests.
  std::function<double(double, double, double, double)> win_probability;

  static ValidationHooks defaults();
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<std::string> validation_check_names();
std::vector<CheckResult> run_validation(
    const ValidationHooks& hooks = ValidationHooks::defaults());

// Prints one PASS/FAIL line per check; returns true when all passed.
bool report_validation(std::ostream& out,
                       const std::vector<CheckResult>& results);

}  // namespace portsel
