// Copyright 2026 The qsdprobe Authors
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

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <unistd.h>

#include <CLI11.hpp>

#include "qsdprobe/coeff_cache.hpp"
#include "qsdprobe/config.hpp"
#include "qsdprobe/csv.hpp"
#include "qsdprobe/scenario.hpp"
#include "qsdprobe/validation.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

extern "C" void on_interrupt(int) {
  const char* path = qsdprobe::pending_output_path();
  if (path && *path) ::unlink(path);
  std::_Exit(130);
}

void print_warnings(const qsdprobe::RunConfig& config) {
  for (const auto& w : config.warnings) std::cerr << "warning: " << w << "\n";
}

int run(const qsdprobe::RunConfig& config) {
  print_warnings(config);
  qsdprobe::run_scenario(config, std::cerr);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_interrupt);
  std::signal(SIGTERM, on_interrupt);

  CLI::App app{"Cavity-probe quantum state diffusion simulator"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run a configuration file");
  run_cmd->add_option("config", config_path, "Configuration file")->required();

  std::string scenario_id;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> K;
  std::optional<std::string> out_dir;
  auto* scenario_cmd = app.add_subcommand("scenario", "Run a built-in scenario preset");
  scenario_cmd->add_option("id", scenario_id, "fig2a, fig2b, fig3a or fig3b")->required();
  scenario_cmd->add_option("--seed", seed, "Master seed");
  scenario_cmd->add_option("--K", K, "Number of trajectories");
  scenario_cmd->add_option("--out", out_dir, "Output directory");

  std::string level = "quick";
  double inject = 1.0;
  std::string report_path;
  std::vector<int> only;
  auto* validate_cmd = app.add_subcommand("validate", "Run the acceptance suite");
  validate_cmd->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  validate_cmd->add_option("--inject-kernel-scale", inject,
                           "Scale the sampled noise amplitude in the noise check");
  validate_cmd->add_option("--only", only, "Criterion ids to run");
  validate_cmd->add_option("--report", report_path, "Write the JSON report here instead of stdout");

  std::string dump_path;
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Solve and dump the coefficient tables");
  coeffs_cmd->add_option("config", config_path, "Configuration file")->required();
  coeffs_cmd->add_option("--dump", dump_path, "Binary output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(qsdprobe::load_config(config_path));

    if (*scenario_cmd) {
      qsdprobe::RunConfig config = qsdprobe::scenario_config(scenario_id);
      if (seed) config.ensemble.seed = *seed;
      if (K) config.ensemble.K = *K;
      if (out_dir) config.output.directory = *out_dir;
      return run(config);
    }

    if (*validate_cmd) {
      qsdprobe::ValidationOptions options;
      options.kernel_amplitude_scale = inject;
      options.log = &std::cerr;
      options.only = only;
      const auto report = qsdprobe::run_validation(
          level == "full" ? qsdprobe::ValidationLevel::Full : qsdprobe::ValidationLevel::Quick,
          options);
      if (report_path.empty()) {
        std::cout << report.to_json() << "\n";
      } else {
        qsdprobe::write_file_atomic(report_path, report.to_json() + "\n");
      }
      return report.all_passed() ? 0 : kExitValidation;
    }

    if (*coeffs_cmd) {
      const qsdprobe::RunConfig config = qsdprobe::load_config(config_path);
      print_warnings(config);
      qsdprobe::validate_config(config);
      const auto coeffs = qsdprobe::solve_coeffs(config.model, config.grid());
      qsdprobe::write_coefficients(dump_path, coeffs);
      std::cerr << "wrote " << dump_path << "\n";
      return 0;
    }
  } catch (const qsdprobe::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qsdprobe::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qsdprobe::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
