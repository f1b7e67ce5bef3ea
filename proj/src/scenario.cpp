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

#include "qsdprobe/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "qsdprobe/coeff_cache.hpp"
#include "qsdprobe/csv.hpp"
#include "qsdprobe/reference.hpp"

namespace qsdprobe {

namespace {

const char* kDirectNote =
    "assumption: direct-coupling kernel is Ornstein-Uhlenbeck with rate gamma and amplitude "
    "gamma/2, so its time integral equals that of the probe's environment layer";

ScenarioPreset one_qubit(const std::string& id, double gamma) {
  ScenarioPreset p;
  p.id = id;
  p.description = "one qubit read through a cavity probe, gamma = " + std::to_string(gamma);
  p.model.n_qubits = 1;
  p.model.omega_s = 1.0;
  p.model.omega_cav = 0.5;
  p.model.g = 0.5;
  p.model.gamma = gamma;
  p.g_values = {0.3, 0.5};
  p.initial_state = "excited";
  p.K = 10000;
  p.observables = {"population", "coherence"};
  p.notes = {"assumption: couplings g = 0.3 and g = 0.5 are representative values", kDirectNote};
  return p;
}

ScenarioPreset two_qubit(const std::string& id, const std::string& state) {
  ScenarioPreset p;
  p.id = id;
  p.description = "two qubits read through a shared cavity probe, initial state " + state;
  p.model.n_qubits = 2;
  p.model.omega_s = 1.0;
  p.model.omega_cav = 0.5;
  p.model.g = 0.5;
  p.model.gamma = 5.0;
  p.model.kappa1 = 1.0;
  p.model.kappa2 = 1.0;
  p.g_values = {0.5};
  p.initial_state = state;
  p.K = 20000;
  p.observables = {"concurrence", "population"};
  p.notes = {kDirectNote};
  return p;
}

std::string g_label(double g) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_g%g", g);
  return buf;
}

std::vector<ObservableSeries> observe(const DensityMatrixSeries& series, int n_qubits,
                                      const std::vector<std::string>& names,
                                      const std::string& prefix) {
  std::vector<ObservableSeries> out;
  for (const auto& name : names) {
    if (name == "population") {
      for (int q = 0; q < n_qubits; ++q) out.push_back(population(series, q));
    } else if (name == "coherence") {
      for (int q = 0; q < n_qubits; ++q) out.push_back(coherence(series, q));
    } else if (name == "concurrence") {
      out.push_back(concurrence(series));
    } else if (name == "trace") {
      out.push_back(trace(series));
    }
  }
  for (auto& o : out) o.name = prefix + o.name;
  return out;
}

void absorb(RunSummary* summary, const DensityMatrixSeries& series) {
  if (!summary) return;
  summary->rejected += series.rejected;
  for (double e : series.std_error) {
    if (std::isfinite(e)) summary->max_std_error = std::max(summary->max_std_error, e);
  }
}

EnsembleOptions progress_options(std::ostream& log, const std::string& label) {
  EnsembleOptions opts;
  opts.progress = [&log, label](std::size_t done, std::size_t total) {
    log << "  " << label << ": " << done << "/" << total << " trajectories\n" << std::flush;
  };
  return opts;
}

Coefficients coefficients_for(const RunConfig& config, const ModelParams& params,
                              const KernelPair& kernels, const TimeGrid& grid, bool cacheable,
                              std::ostream& log) {
  const std::string& cache = config.output.coefficient_cache;
  if (cacheable && !cache.empty()) {
    if (auto hit = load_matching_coefficients(cache, params, kernels, grid)) {
      log << "  coefficients loaded from " << cache << "\n";
      return std::move(*hit);
    }
  }
  Coefficients coeffs = params.n_qubits == 1
                            ? Coefficients(solve_one_qubit_coeffs(params, kernels, grid))
                            : Coefficients(solve_two_qubit_coeffs(params, kernels, grid));
  if (cacheable && !cache.empty()) {
    write_coefficients(cache, coeffs);
    log << "  coefficients cached in " << cache << "\n";
  }
  return coeffs;
}

std::vector<std::string> metadata(const RunConfig& config) {
  std::vector<std::string> lines;
  const std::string id = config.scenario.empty() ? "custom" : config.scenario;
  lines.push_back("qsdprobe run: " + id);
  if (!config.scenario.empty()) lines.push_back(find_scenario(config.scenario).description);
  char buf[256];
  std::snprintf(buf, sizeof buf, "K = %zu, seed = %llu, t_max = %g, dt = %g", config.ensemble.K,
                static_cast<unsigned long long>(config.ensemble.seed), config.t_max, config.dt);
  lines.push_back(buf);
  const ModelParams& m = config.model;
  std::snprintf(buf, sizeof buf,
                "omega_s = %g, omega_cav = %g, g = %g%+gi, gamma = %g, kappa1 = %g, kappa2 = %g",
                m.omega_s, m.omega_cav, m.g.real(), m.g.imag(), m.gamma, m.kappa1, m.kappa2);
  lines.push_back(buf);
  if (!config.scenario.empty()) {
    for (const auto& note : find_scenario(config.scenario).notes) lines.push_back(note);
  } else if (config.output.direct_comparison) {
    lines.push_back(kDirectNote);
  }
  if (m.o34_rotation == O34Rotation::AsPrinted) {
    lines.push_back("option: O3/O4 channels rotate at half the qubit frequency");
  }
  return lines;
}

}  // namespace

const std::vector<ScenarioPreset>& scenario_presets() {
  static const std::vector<ScenarioPreset> presets = {
      one_qubit("fig2a", 0.5),
      one_qubit("fig2b", 5.0),
      two_qubit("fig3a", "bell_phi_plus"),
      two_qubit("fig3b", "both_excited"),
  };
  return presets;
}

const ScenarioPreset& find_scenario(const std::string& id) {
  for (const auto& p : scenario_presets()) {
    if (p.id == id) return p;
  }
  throw ConfigError("unknown scenario '" + id + "'", 0, "scenario");
}

RunConfig scenario_config(const std::string& id) {
  const ScenarioPreset& p = find_scenario(id);
  RunConfig c;
  c.scenario = p.id;
  c.model = p.model;
  c.t_max = p.t_max;
  c.dt = p.dt;
  c.ensemble.K = p.K;
  c.initial_state = InitialState{p.initial_state, {}};
  c.output.observables = p.observables;
  return c;
}

std::vector<ObservableSeries> compute_scenario(const RunConfig& config, std::ostream& log,
                                               RunSummary* summary) {
  validate_config(config);
  const TimeGrid grid = config.grid();
  const int nq = config.model.n_qubits;
  const ComplexVector psi0 = config.initial_state.vector(nq);
  std::vector<Complex> couplings{config.model.g};
  if (!config.scenario.empty()) {
    couplings.clear();
    for (double g : find_scenario(config.scenario).g_values) couplings.emplace_back(g);
  }

  std::vector<ObservableSeries> out;
  for (Complex g : couplings) {
    ModelParams params = config.model;
    params.g = g;
    const std::string tag = couplings.size() > 1 ? g_label(g.real()) : "";
    const KernelPair kernels = model_kernels(params);
    log << "probe" << tag << ": solving coefficients\n";
    const Coefficients coeffs =
        coefficients_for(config, params, kernels, grid, couplings.size() == 1, log);
    const DensityMatrixSeries series =
        run_ensemble(params, coeffs, kernels, psi0, grid, config.ensemble.K, config.ensemble.seed,
                     progress_options(log, "probe" + tag));
    absorb(summary, series);
    const std::string label = params.cut_probe ? "direct" : "probe";
    for (auto& o : observe(series, nq, config.output.observables, label + tag + "_")) {
      out.push_back(std::move(o));
    }
    if (nq == 1 && config.output.reference) {
      const ComplexMatrix rho0 = psi0 * psi0.adjoint();
      const DensityMatrixSeries master =
          solve_one_qubit_master(params, std::get<OneQubitCoeffs>(coeffs), rho0, grid);
      std::vector<std::string> names;
      for (const auto& n : config.output.observables) {
        if (n != "concurrence") names.push_back(n);
      }
      for (auto& o : observe(master, nq, names, "master" + tag + "_")) out.push_back(std::move(o));
    }
  }

  if (config.output.direct_comparison && !config.model.cut_probe) {
    ModelParams params = config.model;
    params.cut_probe = true;
    const CorrelationKernel detector = params.detector_kernel();
    log << "direct: solving coefficients\n";
    const Coefficients coeffs = direct_coupling_coeffs(params, detector, grid);
    const DensityMatrixSeries series =
        run_ensemble(params, coeffs, {detector, CorrelationKernel::zero()}, psi0, grid,
                     config.ensemble.K, config.ensemble.seed, progress_options(log, "direct"));
    absorb(summary, series);
    for (auto& o : observe(series, nq, config.output.observables, "direct_")) {
      out.push_back(std::move(o));
    }
  }
  return out;
}

RunSummary run_scenario(const RunConfig& config, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  const auto series = compute_scenario(config, log, &summary);

  std::filesystem::create_directories(config.output.directory);
  const std::string stem = config.output.prefix + (config.scenario.empty() ? "run" : config.scenario);
  const std::filesystem::path dir(config.output.directory);
  const std::string csv = (dir / (stem + ".csv")).string();
  export_csv(series, csv, metadata(config));
  summary.files.push_back(csv);

  std::string gp = "set datafile separator ','\nset xlabel 't'\nplot \\\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    gp += "  '" + stem + ".csv' using 1:" + std::to_string(2 + 2 * i) + " with lines title '" +
          series[i].name + "'" + (i + 1 < series.size() ? ", \\\n" : "\n");
  }
  const std::string script = (dir / (stem + ".gp")).string();
  write_file_atomic(script, gp);
  summary.files.push_back(script);

  summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log << "rejected trajectories: " << summary.rejected << "\n";
  log << "max standard error: " << summary.max_std_error << "\n";
  log << "wall time: " << summary.seconds << " s\n";
  for (const auto& f : summary.files) log << "wrote " << f << "\n";
  return summary;
}

}  // namespace qsdprobe
