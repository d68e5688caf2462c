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

#include "portsel/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "json.hpp"
#include "portsel/config_io.hpp"

namespace portsel {

namespace {

nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  for (const auto& [key, value] : config_entries(c)) j[key] = value;
  return j;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  std::string s(buf.data(), ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void write_report_csv(std::ostream& out, const PerformanceReport& report) {
  out << kReportCsvHeader << '\n';
  for (const PerformanceRow& r : report.rows) {
    out << format_number(r.beta) << ',' << method_name(r.method) << ','
        << format_number(r.mean_performance) << ','
        << format_number(r.stderr_performance) << ','
        << format_number(r.mean_comparisons) << ',' << r.trials << ','
        << r.seed << '\n';
  }
}

void write_report_json(std::ostream& out, const PerformanceReport& report) {
  nlohmann::ordered_json j;
  j["config"] = config_json(report.config);
  j["rows"] = nlohmann::ordered_json::array();
  for (const PerformanceRow& r : report.rows) {
    j["rows"].push_back({
        {"beta", r.beta},
        {"method", method_name(r.method)},
        {"mean_performance", r.mean_performance},
        {"stderr_performance", r.stderr_performance},
        {"mean_comparisons", r.mean_comparisons},
        {"trials", r.trials},
        {"seed", r.seed},
    });
  }
  out << j.dump(2) << '\n';
}

void write_config_json(std::ostream& out, const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["config"] = config_json(config);
  j["notes"] = {
      {"common_random_numbers",
       "all methods in a trial share one evaluation sample"},
      {"trial_seed",
       "mix64(mix64(mix64(master_seed) ^ beta_index) ^ trial_index)"},
      {"performance", "sum of true values of the selected projects"},
      {"comparisons", "unique project pairs whose aggregated win "
                      "probability was computed"},
  };
  out << j.dump(2) << '\n';
}

}  // namespace portsel
