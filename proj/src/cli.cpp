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

#include "portsel/cli.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "portsel/config_io.hpp"
#include "portsel/errors.hpp"
#include "portsel/report_io.hpp"
#include "portsel/trace.hpp"
#include "portsel/validation.hpp"

namespace portsel {

namespace {

struct ConfigArgs {
  std::string config = "defaults";
  std::vector<std::string> overrides;
};

void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("-c,--config", args.config,
                  "config file, or 'defaults' for the built-in settings")
      ->capture_default_str();
  cmd->add_option("-s,--set", args.overrides,
                  "override a config key (key=value, repeatable)");
}

ExperimentConfig resolve_config(const ConfigArgs& args) {
  ExperimentConfig config = args.config == "defaults"
                                ? ExperimentConfig{}
                                : load_config_file(args.config);
  for (const std::string& o : args.overrides) apply_override(config, o);
  check_config(config);
  return config;
}

// Writes via `emit` to `path` ("-" for the given stream). False on I/O error.
template <typename Emit>
bool write_to(const std::string& path, std::ostream& stdout_stream,
              Emit&& emit) {
  if (path == "-") {
    emit(stdout_stream);
    return static_cast<bool>(stdout_stream);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) return false;
  emit(file);
  file.flush();
  return static_cast<bool>(file);
}

int simulate(const ConfigArgs& args, const std::string& output,
             const std::string& format, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = resolve_config(args);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  const PerformanceReport report = run_experiment(config);
  const bool ok = write_to(output, out, [&](std::ostream& s) {
    if (format == "json") {
      write_report_json(s, report);
    } else {
      write_report_csv(s, report);
    }
  });
  if (!ok) {
    err << "cannot write '" << output << "'\n";
    return kExitIoError;
  }
  if (output != "-") {
    const std::string sidecar = output + ".config.json";
    if (!write_to(sidecar, out,
                  [&](std::ostream& s) { write_config_json(s, config); })) {
      err << "cannot write '" << sidecar << "'\n";
      return kExitIoError;
    }
  }
  return kExitOk;
}

int validate(bool list_only, std::ostream& out) {
  if (list_only) {
    for (const std::string& name : validation_check_names()) {
      out << name << '\n';
    }
    return kExitOk;
  }
  return report_validation(out, run_validation()) ? kExitOk
                                                  : kExitValidationFailure;
}

int trace(const ConfigArgs& args, const std::string& fixture,
          std::size_t beta_index, std::size_t trial, std::size_t fixture_n_star,
          const std::string& output, std::ostream& out, std::ostream& err) {
  std::ostringstream dump;
  try {
    ExperimentConfig config = resolve_config(args);
    if (fixture == "three-project") {
      Rng rng(config.seed);
      trace_sample(dump, three_project_fixture(), config.mode, fixture_n_star,
                   rng, config.solver);
    } else {
      if (fixture == "zero-noise") config.zero_noise = true;
      if (beta_index >= config.beta_grid.size()) {
        throw ConfigError("beta_index", "outside the beta grid");
      }
      trace_trial(dump, config, beta_index, trial);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const UsageError& e) {
    err << "trace: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (!write_to(output, out, [&](std::ostream& s) { s << dump.str(); })) {
    err << "cannot write '" << output << "'\n";
    return kExitIoError;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Portfolio selection by preference aggregation"};
  app.require_subcommand(1);

  ConfigArgs sim_args;
  std::string sim_output = "-";
  std::string format = "csv";
  CLI::App* sim = app.add_subcommand("simulate", "run the Monte Carlo harness");
  add_config_options(sim, sim_args);
  sim->add_option("-o,--output", sim_output, "report path ('-' for stdout)")
      ->capture_default_str();
  sim->add_option("-f,--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  bool list_only = false;
  CLI::App* val = app.add_subcommand("validate", "run the regression checks");
  val->add_flag("--list", list_only, "print check names only");

  ConfigArgs trace_args;
  std::string fixture = "none";
  std::size_t beta_index = 0;
  std::size_t trial = 0;
  std::size_t fixture_n_star = 1;
  std::string trace_output = "-";
  CLI::App* tr = app.add_subcommand("trace", "dump one trial verbosely");
  add_config_options(tr, trace_args);
  tr->add_option("--fixture", fixture, "none, three-project or zero-noise")
      ->check(CLI::IsMember({"none", "three-project", "zero-noise"}))
      ->capture_default_str();
  tr->add_option("--beta-index", beta_index, "position in beta_grid")
      ->capture_default_str();
  tr->add_option("--trial", trial, "trial index")->capture_default_str();
  tr->add_option("--n-star", fixture_n_star,
                 "selection size for the three-project fixture")
      ->capture_default_str();
  tr->add_option("-o,--output", trace_output, "dump path ('-' for stdout)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (sim->parsed()) return simulate(sim_args, sim_output, format, out, err);
  if (val->parsed()) return validate(list_only, out);
  return trace(trace_args, fixture, beta_index, trial, fixture_n_star,
               trace_output, out, err);
}

}  // namespace portsel
