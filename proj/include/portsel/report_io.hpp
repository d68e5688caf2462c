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

#include <ostream>
#include <string>

#include "portsel/simulator.hpp"

namespace portsel {

inline constexpr const char* kReportCsvHeader =
    "beta,method,mean_performance,stderr_performance,mean_comparisons,trials,"
    "seed";

// Shortest decimal that round-trips; integral values keep a trailing ".0".
std::string format_number(double x);

void write_report_csv(std::ostream& out, const PerformanceReport& report);
void write_report_json(std::ostream& out, const PerformanceReport& report);
// Resolved configuration plus run metadata, written next to the CSV.
void write_config_json(std::ostream& out, const ExperimentConfig& config);

}  // namespace portsel
