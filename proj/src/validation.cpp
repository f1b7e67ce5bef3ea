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

#include "qsdprobe/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qsdprobe/config.hpp"
#include "qsdprobe/observables.hpp"
#include "qsdprobe/reference.hpp"

namespace qsdprobe {

namespace {

using Clock = std::chrono::steady_clock;

class Check {
 public:
  Check(int id, std::string name) {
    r_.id = id;
    r_.name = std::move(name);
    r_.passed = true;
  }
  void measure(const std::string& key, double value) { r_.measured.emplace_back(key, value); }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      r_.passed = false;
      note("FAILED " + what);
    }
  }
  void note(const std::string& text) {
    if (!r_.detail.empty()) r_.detail += "; ";
    r_.detail += text;
  }
  CriterionResult take() { return std::move(r_); }

 private:
  CriterionResult r_;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

void say(const ValidationOptions& o, const std::string& line) {
  if (o.log) *o.log << line << "\n" << std::flush;
}

EnsembleOptions ensemble_options(const ValidationOptions& o) {
  EnsembleOptions e;
  e.workers = o.workers;
  return e;
}

ModelParams one_qubit_probe(double gamma) {
  ModelParams p;
  p.n_qubits = 1;
  p.omega_s = 1.0;
  p.omega_cav = 0.5;
  p.g = 0.5;
  p.gamma = gamma;
  return p;
}

ModelParams two_qubit_probe() {
  ModelParams p = one_qubit_probe(5.0);
  p.n_qubits = 2;
  p.kappa1 = 1.0;
  p.kappa2 = 1.0;
  return p;
}

// Resonant Jaynes-Cummings setup without the environment layer.
ModelParams resonant_jc() {
  ModelParams p;
  p.n_qubits = 1;
  p.omega_s = 1.0;
  p.omega_cav = 1.0;
  p.g = 0.5;
  p.environment_layer = false;
  return p;
}

DensityMatrixSeries ensemble(const ModelParams& params, const ComplexVector& psi0,
                             const TimeGrid& grid, std::size_t K, std::uint64_t seed,
                             const ValidationOptions& o) {
  const KernelPair kernels = model_kernels(params);
  const Coefficients coeffs = solve_coeffs(params, grid);
  return run_ensemble(params, coeffs, kernels, psi0, grid, K, seed, ensemble_options(o));
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

CriterionResult noise_statistics(const ValidationOptions& o) {
  Check c(1, "noise statistics");
  const TimeGrid grid = TimeGrid::make(1.0, 0.01);
  const std::size_t K = 10000;
  const std::size_t idx[] = {0, 10, 25, 50, 100};
  const ModelParams params = one_qubit_probe(5.0);
  const double scale = o.kernel_amplitude_scale;
  struct Case {
    const char* name;
    CorrelationKernel analytic;
    CorrelationKernel sampled;
  };
  CorrelationKernel cavity = params.probe_kernel();
  CorrelationKernel cavity_sampled = cavity;
  cavity_sampled.g *= std::sqrt(scale);
  CorrelationKernel ou = params.environment_kernel();
  CorrelationKernel ou_sampled = ou;
  ou_sampled.amplitude *= scale;
  const Case cases[] = {{"cavity", cavity, cavity_sampled}, {"ou", ou, ou_sampled}};
  int channel = 0;
  for (const Case& k : cases) {
    std::vector<NoiseRealization> paths;
    paths.reserve(K);
    for (std::size_t n = 0; n < K; ++n) {
      paths.push_back(sample_noise(k.sampled, grid, derive_seed(2024, n, channel)));
    }
    ++channel;
    double worst_corr = 0.0;
    double worst_pair = 0.0;
    for (std::size_t i : idx) {
      for (std::size_t j : idx) {
        const CorrelationEstimate e = empirical_correlation(paths, i, j);
        const Complex expected = kernel_value(k.analytic, grid.time(i), grid.time(j));
        worst_corr = std::max(worst_corr, std::abs(e.mean - expected) / e.std_error);
        const CorrelationEstimate p = empirical_pair_moment(paths, i, j);
        worst_pair = std::max(worst_pair, std::abs(p.mean) / p.std_error);
      }
    }
    c.measure(std::string(k.name) + "_max_correlation_z", worst_corr);
    c.measure(std::string(k.name) + "_max_pair_moment_z", worst_pair);
    c.note(std::string(k.name) + fmt(": |mean - kernel| <= %.2f se, |pair| <= %.2f se", worst_corr,
                                     worst_pair));
    c.require(worst_corr <= 5.0, std::string(k.name) + " correlation within 5 se");
    c.require(worst_pair <= 5.0, std::string(k.name) + " pair moment within 5 se");
  }
  return c.take();
}

CriterionResult oracle_chain(const ValidationOptions& o) {
  Check c(2, "oracle chain");
  const ModelParams params = resonant_jc();
  const TimeGrid grid = TimeGrid::make(2.4, 0.01);
  const ComplexVector psi0 = ops::basis_state(2, 1);
  const ComplexMatrix rho0 = projector(psi0);

  const LindbladResult lind =
      solve_lindblad_oracle(make_lindblad_model(params, 10, 0.0), rho0, grid);
  const OneQubitCoeffs coeffs = solve_one_qubit_coeffs(params, grid);
  const DensityMatrixSeries master = solve_one_qubit_master(params, coeffs, rho0, grid);
  const DensityMatrixSeries mc =
      run_ensemble(params, coeffs, model_kernels(params), psi0, grid, 10000, 7, ensemble_options(o));
  const ObservableSeries pop = population(mc);

  double d_lind = 0.0, d_master = 0.0, d_mc = 0.0;
  bool mc_ok = true;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double exact = jc_population(params.g, grid.time(k));
    d_lind = std::max(d_lind, std::abs(lind.qubits.rho[k](1, 1).real() - exact));
    d_master = std::max(d_master, std::abs(master.rho[k](1, 1).real() - exact));
    const double dev = std::abs(pop.values[k] - exact);
    d_mc = std::max(d_mc, dev);
    if (dev > std::max(0.02, 3.0 * pop.std_error[k])) mc_ok = false;
  }
  c.measure("lindblad_max_deviation", d_lind);
  c.measure("master_max_deviation", d_master);
  c.measure("ensemble_max_deviation", d_mc);
  c.note(fmt("lindblad %.2e, master %.2e, ensemble %.2e", d_lind, d_master, d_mc));
  c.require(d_lind <= 1e-6, "lindblad within 1e-6");
  c.require(d_master <= 1e-6, "master equation within 1e-6");
  c.require(mc_ok, "ensemble within max(0.02, 3 se)");
  return c.take();
}

CriterionResult riccati(const ValidationOptions&) {
  Check c(3, "riccati closed form");
  const ModelParams params = resonant_jc();
  const TimeGrid grid = TimeGrid::make(2.4, 0.01);
  const OneQubitCoeffs coeffs = solve_one_qubit_coeffs(params, grid);
  const double g = std::abs(params.g);
  double worst = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double exact = g * std::tan(g * grid.time(k));
    worst = std::max(worst, std::abs(coeffs.N(k) - exact) / exact);
  }
  c.measure("max_relative_error", worst);
  c.note(fmt("max relative error %.2e", worst));
  c.require(worst <= 1e-6, "relative error within 1e-6");
  return c.take();
}

CriterionResult master_vs_ensemble(const ValidationOptions& o) {
  Check c(4, "master vs ensemble");
  const ModelParams params = one_qubit_probe(5.0);
  const TimeGrid grid = TimeGrid::make(10.0, 0.01);
  const ComplexVector psi0 = ops::basis_state(2, 1);
  const OneQubitCoeffs coeffs = solve_one_qubit_coeffs(params, grid);
  const DensityMatrixSeries master = solve_one_qubit_master(params, coeffs, projector(psi0), grid);
  const DensityMatrixSeries mc = run_ensemble(params, coeffs, model_kernels(params), psi0, grid,
                                              10000, 11, ensemble_options(o));
  double worst_ratio = 0.0, worst_distance = 0.0;
  std::size_t violations = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const ComplexMatrix diff = mc.rho[k] - master.rho[k];
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (diff + diff.adjoint()),
                                                     Eigen::EigenvaluesOnly);
    const double distance = 0.5 * eig.eigenvalues().cwiseAbs().sum();
    worst_distance = std::max(worst_distance, distance);
    const double se = mc.std_error[k];
    if (distance > 3.0 * se) ++violations;
    if (se > 0.0) worst_ratio = std::max(worst_ratio, distance / se);
  }
  c.measure("max_trace_distance", worst_distance);
  c.measure("max_distance_over_se", worst_ratio);
  c.measure("violations", static_cast<double>(violations));
  c.note(fmt("max distance %.3e, max distance/se %.2f, %g points above 3 se", worst_distance,
             worst_ratio, static_cast<double>(violations)));
  c.require(violations == 0, "trace distance within 3 se at every point");
  return c.take();
}

CriterionResult markov_convergence(const ValidationOptions& o) {
  Check c(5, "markov convergence");
  const TimeGrid grid = TimeGrid::make(10.0, 0.005);
  const ComplexVector psi0 = ops::basis_state(2, 1);
  std::vector<double> deviation;
  bool last_ok = false;
  for (double gamma : {5.0, 20.0, 100.0}) {
    const ModelParams params = one_qubit_probe(gamma);
    const LindbladResult lind =
        solve_lindblad_oracle(make_lindblad_model(params), projector(psi0), grid);
    const DensityMatrixSeries mc = ensemble(params, psi0, grid, 10000, 13, o);
    const ObservableSeries pop = population(mc);
    double worst = 0.0;
    bool ok = true;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double dev = std::abs(pop.values[k] - lind.qubits.rho[k](1, 1).real());
      worst = std::max(worst, dev);
      if (dev > std::max(0.02, 3.0 * pop.std_error[k])) ok = false;
    }
    deviation.push_back(worst);
    last_ok = ok;
    c.measure(fmt("max_deviation_gamma_%g", gamma), worst);
    c.note(fmt("gamma %g: %.4f", gamma, worst));
  }
  c.require(deviation[0] > deviation[1] && deviation[1] > deviation[2],
            "deviation decreasing in gamma");
  c.require(last_ok, "gamma 100 within max(0.02, 3 se)");
  return c.take();
}

CriterionResult back_action(const ValidationOptions& o) {
  Check c(6, "back-action signature");
  const TimeGrid grid = TimeGrid::make(10.0, 0.01);
  const ComplexVector psi0 = ops::basis_state(2, 1);
  ModelParams probe = one_qubit_probe(5.0);
  ModelParams direct = probe;
  direct.cut_probe = true;
  const ObservableSeries a = population(ensemble(probe, psi0, grid, 10000, 17, o));
  const ObservableSeries b = population(ensemble(direct, psi0, grid, 10000, 17, o));
  // Trapezoid average over [0, t_max].
  auto average = [&](auto value) {
    double sum = 0.0;
    const std::size_t n = grid.size();
    for (std::size_t k = 0; k < n; ++k) sum += (k == 0 || k + 1 == n ? 0.5 : 1.0) * value(k);
    return sum * grid.dt / grid.t_max;
  };
  const double margin = average([&](std::size_t k) { return a.values[k] - b.values[k]; });
  const double se = average([&](std::size_t k) {
    return std::hypot(a.std_error[k], b.std_error[k]);
  });
  c.measure("probe_average", average([&](std::size_t k) { return a.values[k]; }));
  c.measure("direct_average", average([&](std::size_t k) { return b.values[k]; }));
  c.measure("margin", margin);
  c.measure("margin_std_error", se);
  c.note(fmt("margin %.4f, se %.2e", margin, se));
  c.require(margin > 0.0 && margin > 3.0 * se, "probe average above direct by 3 se");
  return c.take();
}

CriterionResult two_qubit_reductions(const ValidationOptions&) {
  Check c(7, "two-qubit reductions");
  const TimeGrid grid = TimeGrid::make(10.0, 0.01);
  ModelParams two = two_qubit_probe();
  two.kappa2 = 0.0;
  ModelParams one = two;
  one.n_qubits = 1;
  one.kappa1 = 1.0;
  const TwoQubitCoeffs reduced = solve_two_qubit_coeffs(two, grid);
  const OneQubitCoeffs single = solve_one_qubit_coeffs(one, grid);
  double reduction = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    reduction = std::max(reduction, std::abs(reduced.N(1, k) - single.N(k)));
  }
  const TwoQubitCoeffs sym = solve_two_qubit_coeffs(two_qubit_probe(), grid);
  double asym = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    asym = std::max({asym, std::abs(sym.N(1, k) - sym.N(2, k)), std::abs(sym.N(3, k) - sym.N(4, k)),
                     std::abs(sym.M(1, k) - sym.M(2, k)), std::abs(sym.M(3, k) - sym.M(4, k))});
  }
  c.measure("reduction_max_error", reduction);
  c.measure("symmetry_max_error", asym);
  c.note(fmt("kappa2 = 0 reduction %.2e, exchange symmetry %.2e", reduction, asym));
  c.require(reduction <= 1e-8, "reduction within 1e-8");
  c.require(asym <= 1e-10, "exchange symmetry within 1e-10");
  return c.take();
}

struct ConcurrencePair {
  ObservableSeries probe;
  ObservableSeries direct;
};

ConcurrencePair concurrence_runs(const std::string& preset, std::uint64_t seed,
                                 const ValidationOptions& o) {
  const TimeGrid grid = TimeGrid::make(10.0, 0.01);
  const ComplexVector psi0 = InitialState{preset, {}}.vector(2);
  ModelParams probe = two_qubit_probe();
  ModelParams direct = probe;
  direct.cut_probe = true;
  say(o, "  " + preset + ": probe ensemble");
  ConcurrencePair out;
  out.probe = concurrence(ensemble(probe, psi0, grid, 20000, seed, o));
  say(o, "  " + preset + ": direct ensemble");
  out.direct = concurrence(ensemble(direct, psi0, grid, 20000, seed, o));
  return out;
}

std::optional<std::size_t> first_death(const ObservableSeries& s) {
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (s.values[k] <= s.std_error[k]) return k;
  }
  return std::nullopt;
}

std::optional<std::size_t> revival_after(const ObservableSeries& s, std::size_t from) {
  for (std::size_t k = from; k < s.values.size(); ++k) {
    if (s.values[k] > 3.0 * s.std_error[k]) return k;
  }
  return std::nullopt;
}

CriterionResult sudden_death(const ValidationOptions& o) {
  Check c(8, "entanglement sudden death and rebirth");
  const ConcurrencePair runs = concurrence_runs("bell_phi_plus", 19, o);
  const TimeGrid& grid = runs.probe.grid;
  const auto death = first_death(runs.probe);
  std::optional<std::size_t> rebirth;
  if (death) rebirth = revival_after(runs.probe, *death);
  if (death) {
    c.measure("probe_death_time", grid.time(*death));
    c.note(fmt("probe dies at t = %.2f", grid.time(*death)));
  }
  if (rebirth) {
    double peak = 0.0;
    for (std::size_t k = *rebirth; k < grid.size(); ++k) peak = std::max(peak, runs.probe.values[k]);
    c.measure("probe_rebirth_time", grid.time(*rebirth));
    c.measure("probe_rebirth_peak", peak);
    c.note(fmt("reborn at t = %.2f, peak %.4f", grid.time(*rebirth), peak));
  }
  c.require(death.has_value(), "probe concurrence reaches the noise floor");
  c.require(rebirth.has_value(), "probe concurrence revives above 3 se");

  const auto direct_death = first_death(runs.direct);
  std::optional<std::size_t> direct_revival;
  if (direct_death) {
    c.measure("direct_death_time", grid.time(*direct_death));
    direct_revival = revival_after(runs.direct, *direct_death);
    c.note(fmt("direct dies at t = %.2f", grid.time(*direct_death)));
  } else {
    c.note(fmt("direct stays above the noise floor, final C = %.4f", runs.direct.values.back()));
  }
  c.require(!direct_revival, "direct concurrence shows no revival");
  return c.take();
}

CriterionResult generation(const ValidationOptions& o) {
  Check c(9, "entanglement generation");
  const ConcurrencePair runs = concurrence_runs("both_excited", 23, o);
  const TimeGrid& grid = runs.probe.grid;
  c.measure("probe_initial", runs.probe.values.front());
  c.require(runs.probe.values.front() == 0.0, "initial concurrence exactly zero");
  double peak = 0.0, peak_t = 0.0, peak_z = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double v = runs.probe.values[k];
    if (v > peak) {
      peak = v;
      peak_t = grid.time(k);
      peak_z = runs.probe.std_error[k] > 0.0 ? v / runs.probe.std_error[k] : 0.0;
    }
  }
  const auto generated = revival_after(runs.probe, 1);
  c.measure("probe_peak", peak);
  c.measure("probe_peak_time", peak_t);
  c.measure("probe_peak_over_se", peak_z);
  c.note(fmt("probe peak %.4f at t = %.2f (%.1f se)", peak, peak_t, peak_z));
  c.require(generated.has_value(), "probe concurrence exceeds 3 se");

  double direct_peak = 0.0, direct_excess = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    direct_peak = std::max(direct_peak, runs.direct.values[k]);
    direct_excess = std::max(direct_excess, runs.direct.values[k] - 3.0 * runs.direct.std_error[k]);
  }
  c.measure("direct_peak", direct_peak);
  c.measure("direct_max_excess_over_3se", direct_excess);
  c.note(fmt("direct peak %.2e", direct_peak));
  c.require(direct_excess <= 0.0, "direct concurrence stays within 3 se");
  return c.take();
}

ComplexMatrix random_unitary(std::uint64_t seed) {
  GaussianStream g(seed);
  ComplexMatrix m(2, 2);
  for (Eigen::Index i = 0; i < 4; ++i) m(i % 2, i / 2) = g.complex_normal();
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  return qr.householderQ();
}

CriterionResult infrastructure(const ValidationOptions&) {
  Check c(10, "ensemble infrastructure");
  const TimeGrid grid = TimeGrid::make(3.0, 0.01);
  const ModelParams params = two_qubit_probe();
  const ComplexVector psi0 = InitialState{"bell_phi_plus", {}}.vector(2);
  const Coefficients coeffs = solve_coeffs(params, grid);
  const KernelPair kernels = model_kernels(params);
  EnsembleOptions serial;
  serial.workers = 1;
  EnsembleOptions parallel;
  parallel.workers = 3;
  const DensityMatrixSeries a = run_ensemble(params, coeffs, kernels, psi0, grid, 2000, 29, serial);
  const DensityMatrixSeries b =
      run_ensemble(params, coeffs, kernels, psi0, grid, 2000, 29, parallel);
  const DensityMatrixSeries again =
      run_ensemble(params, coeffs, kernels, psi0, grid, 2000, 29, serial);
  bool identical = true;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    identical = identical && a.rho[k] == b.rho[k] && a.rho[k] == again.rho[k] &&
                a.entry_error[k] == b.entry_error[k];
  }
  c.require(identical, "bit-identical across repeats and worker counts");

  const ObservableSeries tr = trace(a);
  double herm = 0.0, trace_z = 0.0, neg_z = 0.0;
  bool trace_ok = true, positive = true;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    herm = std::max(herm, (a.rho[k] - a.rho[k].adjoint()).cwiseAbs().maxCoeff());
    const double se = std::max(tr.std_error[k], a.std_error[k]);
    const double dev = std::abs(tr.values[k] - 1.0);
    if (dev > 5.0 * se) trace_ok = false;
    if (se > 0.0) trace_z = std::max(trace_z, dev / se);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a.rho[k], Eigen::EigenvaluesOnly);
    const double low = eig.eigenvalues().minCoeff();
    if (low < -5.0 * a.std_error[k]) positive = false;
    if (low < 0.0 && a.std_error[k] > 0.0) neg_z = std::max(neg_z, -low / a.std_error[k]);
  }
  c.measure("hermiticity", herm);
  c.measure("max_trace_deviation_over_se", trace_z);
  c.measure("max_negativity_over_se", neg_z);
  c.require(herm <= 1e-12, "Hermitian within 1e-12");
  c.require(trace_ok, "trace within 5 se");
  c.require(positive, "eigenvalues above -5 se");

  double lu = 0.0;
  for (std::uint64_t s = 0; s < 8; ++s) {
    const ComplexMatrix& rho = a.rho[(s * 37) % grid.size()];
    const ComplexMatrix u = tensor_product(random_unitary(derive_seed(31, s, 0)),
                                           random_unitary(derive_seed(31, s, 1)));
    const ComplexMatrix rotated = u * rho * u.adjoint();
    lu = std::max(lu, std::abs(concurrence(rotated).value - concurrence(rho).value));
  }
  c.measure("local_unitary_max_change", lu);
  c.require(lu <= 1e-10, "local-unitary invariance within 1e-10");

  const ComplexVector bell = InitialState{"bell_phi_plus", {}}.vector(2);
  const ComplexMatrix werner =
      0.5 * projector(bell) + 0.5 * ComplexMatrix::Identity(4, 4) / 4.0;
  const double w = concurrence(werner).value;
  c.measure("werner_concurrence", w);
  c.require(std::abs(w - 0.25) <= 1e-10, "Werner p = 0.5 concurrence 0.25");
  c.note(fmt("hermiticity %.1e, local unitary %.1e, werner %.12f", herm, lu, w));
  return c.take();
}

}  // namespace

CriterionResult run_criterion(int id, const ValidationOptions& options) {
  using Fn = CriterionResult (*)(const ValidationOptions&);
  static const Fn table[kCriterionCount] = {
      noise_statistics, oracle_chain,         riccati,      master_vs_ensemble, markov_convergence,
      back_action,      two_qubit_reductions, sudden_death, generation,         infrastructure,
  };
  if (id < 1 || id > kCriterionCount) throw InvalidArgument("criterion id must be 1..10");
  const auto start = Clock::now();
  say(options, "criterion " + std::to_string(id) + ": running");
  CriterionResult r;
  try {
    r = table[id - 1](options);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  say(options, format_result(r));
  return r;
}

ValidationReport run_validation(ValidationLevel level, const ValidationOptions& options) {
  ValidationReport report;
  const int last = level == ValidationLevel::Quick ? 3 : kCriterionCount;
  for (int id = 1; id <= last; ++id) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    report.results.push_back(run_criterion(id, options));
  }
  return report;
}

bool ValidationReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["passed"] = all_passed();
  doc["criteria"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json entry;
    entry["id"] = r.id;
    entry["name"] = r.name;
    entry["passed"] = r.passed;
    entry["detail"] = r.detail;
    entry["seconds"] = r.seconds;
    nlohmann::ordered_json measured = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.measured) {
      if (std::isfinite(value)) {
        measured[key] = value;
      } else {
        measured[key] = nullptr;
      }
    }
    entry["measured"] = std::move(measured);
    doc["criteria"].push_back(std::move(entry));
  }
  return doc.dump(2);
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail;
  char buf[32];
  std::snprintf(buf, sizeof buf, " (%.1f s)", r.seconds);
  out << buf;
  return out.str();
}

}  // namespace qsdprobe
