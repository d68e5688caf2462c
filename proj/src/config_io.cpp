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

#include "portsel/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "portsel/errors.hpp"
#include "portsel/report_io.hpp"

namespace portsel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key),
                      "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key), "expected a nonnegative integer, got '" +
                                            std::string(text) + "'");
  }
  return v;
}

std::vector<double> to_doubles(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (std::string_view item : split_list(text)) {
    out.push_back(to_double(key, item));
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(key),
                    "expected true or false, got '" + std::string(text) + "'");
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += format_number(xs[k]);
  }
  return out;
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "n",      "N",          "n_star",         "beta_grid", "trials",
      "master_seed", "mode",  "levels",         "methods",   "values",
      "t_min",  "t_max",      "e_M",            "zero_noise", "scheme",
      "tolerance", "max_iterations", "threads",
  };
  return keys;
}

void apply_setting(ExperimentConfig& c, std::string_view key,
                   std::string_view value) {
  const std::string k(key);
  value = trim(value);
  if (key == "n") {
    c.projects = to_unsigned(key, value);
  } else if (key == "N") {
    c.agents = to_unsigned(key, value);
  } else if (key == "n_star") {
    c.n_star = to_unsigned(key, value);
  } else if (key == "beta_grid") {
    c.beta_grid = to_doubles(key, value);
  } else if (key == "trials") {
    c.trials = to_unsigned(key, value);
    if (c.trials == 0) throw ConfigError(k, "must be >= 1");
  } else if (key == "master_seed") {
    c.seed = to_unsigned(key, value);
  } else if (key == "mode") {
    if (value == "continuous") {
      c.mode = ProbabilityMode::continuous();
    } else if (value == "discrete") {
      if (!c.mode.is_discrete()) c.mode = ProbabilityMode::discrete();
    } else {
      throw ConfigError(k, "expected continuous or discrete");
    }
  } else if (key == "levels") {
    try {
      c.mode = ProbabilityMode::discrete(to_doubles(key, value));
    } catch (const UsageError& e) {
      throw ConfigError(k, e.what());
    }
  } else if (key == "methods") {
    c.methods.clear();
    if (value == "all") {
      c.methods.assign(kAllMethods.begin(), kAllMethods.end());
      return;
    }
    for (std::string_view name : split_list(value)) {
      const auto m = parse_method(name);
      if (!m) throw ConfigError(k, "unknown method '" + std::string(name) + "'");
      if (std::find(c.methods.begin(), c.methods.end(), *m) ==
          c.methods.end()) {
        c.methods.push_back(*m);
      }
    }
  } else if (key == "values") {
    c.values = value == "index" ? std::vector<double>{} : to_doubles(key, value);
  } else if (key == "t_min") {
    c.t_min = to_double(key, value);
  } else if (key == "t_max") {
    c.t_max = to_double(key, value);
  } else if (key == "e_M") {
    c.e_m = to_double(key, value);
  } else if (key == "zero_noise") {
    c.zero_noise = to_bool(key, value);
  } else if (key == "scheme") {
    if (value == "Zermelo") {
      c.solver.scheme = Scheme::Zermelo;
    } else if (value == "Newman") {
      c.solver.scheme = Scheme::Newman;
    } else if (value == "NewmanGaussSeidel") {
      c.solver.scheme = Scheme::NewmanGaussSeidel;
    } else {
      throw ConfigError(k, "expected Zermelo, Newman or NewmanGaussSeidel");
    }
  } else if (key == "tolerance") {
    c.solver.tolerance = to_double(key, value);
  } else if (key == "max_iterations") {
    c.solver.max_iterations = static_cast<int>(to_unsigned(key, value));
  } else if (key == "threads") {
    c.threads = static_cast<unsigned>(to_unsigned(key, value));
  } else {
    throw ConfigError(k, "unknown key");
  }
}

void apply_override(ExperimentConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(std::string(trim(assignment)),
                      "override must look like key=value");
  }
  apply_setting(config, trim(assignment.substr(0, eq)),
                assignment.substr(eq + 1));
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    if (view.find('=') == std::string_view::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) +
                                ": expected key = value");
    }
    apply_override(config, view);
  }
  return config;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  return parse_config(in);
}

void check_config(const ExperimentConfig& config) {
  try {
    config.validate();
  } catch (const UsageError& e) {
    throw ConfigError("", e.what());
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& c) {
  std::string methods;
  for (Method m : c.methods) {
    if (!methods.empty()) methods += ',';
    methods += method_name(m);
  }
  return {
      {"n", std::to_string(c.projects)},
      {"N", std::to_string(c.agents)},
      {"n_star", std::to_string(c.n_star)},
      {"beta_grid", join_numbers(c.beta_grid)},
      {"trials", std::to_string(c.trials)},
      {"master_seed", std::to_string(c.seed)},
      {"mode", c.mode.is_discrete() ? "discrete" : "continuous"},
      {"levels", join_numbers(c.mode.is_discrete()
                                  ? c.mode.levels()
                                  : ProbabilityMode::default_levels())},
      {"methods", methods},
      {"values", c.values.empty() ? "index" : join_numbers(c.values)},
      {"t_min", format_number(c.t_min)},
      {"t_max", format_number(c.t_max)},
      {"e_M", format_number(c.e_m)},
      {"zero_noise", c.zero_noise ? "true" : "false"},
      {"scheme", std::string(scheme_name(c.solver.scheme))},
      {"tolerance", format_number(c.solver.tolerance)},
      {"max_iterations", std::to_string(c.solver.max_iterations)},
      {"threads", std::to_string(c.threads)},
  };
}

}  // namespace portsel
