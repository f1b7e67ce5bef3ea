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

#include "qsdprobe/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qsdprobe/scenario.hpp"

namespace qsdprobe {

ComplexVector InitialState::vector(int n_qubits) const {
  const Eigen::Index dim = n_qubits == 1 ? 2 : 4;
  if (!amplitudes.empty()) {
    if (static_cast<Eigen::Index>(amplitudes.size()) != dim) {
      throw ConfigError("expected " + std::to_string(dim) + " initial amplitudes", 0,
                        "model.initial_state");
    }
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = amplitudes[static_cast<std::size_t>(i)];
    if (std::abs(v.norm() - 1.0) > tolerance::kNormalization) {
      throw ConfigError("initial amplitudes are not normalized", 0, "model.initial_state");
    }
    return v;
  }
  if (preset == "ground") return ops::basis_state(dim, 0);
  if (preset == "excited") return ops::basis_state(dim, n_qubits == 1 ? 1 : 2);
  if (n_qubits == 2 && preset == "both_excited") return ops::basis_state(dim, 3);
  if (n_qubits == 2 && preset == "bell_phi_plus") {
    ComplexVector v = ComplexVector::Zero(4);
    v[0] = v[3] = 1.0 / std::sqrt(2.0);
    return v;
  }
  throw ConfigError("unknown initial state '" + preset + "' for " + std::to_string(n_qubits) +
                        " qubit(s)",
                    0, "model.initial_state");
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Entries = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"", {"scenario"}},
      {"model",
       {"n_qubits", "omega_s", "omega_a", "omega_b", "omega_cav", "g", "g_imag", "gamma",
        "kappa1", "kappa2", "environment_layer", "cut_probe", "direct_amplitude",
        "o34_rotation", "pole_ceiling", "initial_state"}},
      {"grid", {"t_max", "dt"}},
      {"ensemble", {"K", "seed"}},
      {"output",
       {"directory", "prefix", "observables", "direct_comparison", "reference",
        "coefficient_cache"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& text, const std::string& field, int line) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + text + "'", line, field);
  }
  return v;
}

std::uint64_t parse_unsigned(const std::string& text, const std::string& field, int line) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("expected a non-negative integer, got '" + text + "'", line, field);
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& field, int line) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError("expected true or false, got '" + text + "'", line, field);
}

// Accepts "a", "bi", "a+bi" and "a-bi".
Complex parse_complex(const std::string& text, const std::string& field, int line) {
  if (text.empty()) throw ConfigError("empty amplitude", line, field);
  if (text.back() != 'i') return parse_double(text, field, line);
  const std::string body = text.substr(0, text.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  auto imag_of = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s[0] == '+' ? s.substr(1) : s, field, line);
  };
  if (split == std::string::npos) return Complex(0.0, imag_of(body));
  return Complex(parse_double(body.substr(0, split), field, line), imag_of(body.substr(split)));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_complex(Complex c) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

void apply(RunConfig& c, const std::string& key, const Entry& e) {
  const std::string& v = e.value;
  const int line = e.line;
  auto num = [&] { return parse_double(v, key, line); };
  auto flag = [&] { return parse_bool(v, key, line); };

  if (key == "model.n_qubits") {
    const auto n = parse_unsigned(v, key, line);
    if (n != 1 && n != 2) throw ConfigError("n_qubits must be 1 or 2", line, key);
    c.model.n_qubits = static_cast<int>(n);
  } else if (key == "model.omega_s") {
    c.model.omega_s = num();
  } else if (key == "model.omega_a") {
    c.model.omega_a = num();
  } else if (key == "model.omega_b") {
    c.model.omega_b = num();
  } else if (key == "model.omega_cav") {
    c.model.omega_cav = num();
  } else if (key == "model.g") {
    c.model.g.real(num());
  } else if (key == "model.g_imag") {
    c.model.g.imag(num());
  } else if (key == "model.gamma") {
    c.model.gamma = num();
  } else if (key == "model.kappa1") {
    c.model.kappa1 = num();
  } else if (key == "model.kappa2") {
    c.model.kappa2 = num();
  } else if (key == "model.environment_layer") {
    c.model.environment_layer = flag();
  } else if (key == "model.cut_probe") {
    c.model.cut_probe = flag();
  } else if (key == "model.direct_amplitude") {
    c.model.direct_amplitude = num();
  } else if (key == "model.o34_rotation") {
    if (v == "consistent") {
      c.model.o34_rotation = O34Rotation::Consistent;
    } else if (v == "as_printed") {
      c.model.o34_rotation = O34Rotation::AsPrinted;
    } else {
      throw ConfigError("expected consistent or as_printed", line, key);
    }
  } else if (key == "model.pole_ceiling") {
    c.model.pole_ceiling = num();
  } else if (key == "model.initial_state") {
    const auto items = split_list(v);
    const bool named = items.size() == 1 && std::isalpha(static_cast<unsigned char>(items[0][0])) &&
                       items[0].back() != 'i';
    if (named) {
      c.initial_state = InitialState{items[0], {}};
    } else {
      InitialState s;
      s.preset.clear();
      for (const auto& item : items) s.amplitudes.push_back(parse_complex(item, key, line));
      c.initial_state = s;
    }
  } else if (key == "grid.t_max") {
    c.t_max = num();
  } else if (key == "grid.dt") {
    c.dt = num();
  } else if (key == "ensemble.K") {
    c.ensemble.K = parse_unsigned(v, key, line);
  } else if (key == "ensemble.seed") {
    c.ensemble.seed = parse_unsigned(v, key, line);
  } else if (key == "output.directory") {
    c.output.directory = v;
  } else if (key == "output.prefix") {
    c.output.prefix = v;
  } else if (key == "output.observables") {
    c.output.observables = split_list(v);
  } else if (key == "output.direct_comparison") {
    c.output.direct_comparison = flag();
  } else if (key == "output.reference") {
    c.output.reference = flag();
  } else if (key == "output.coefficient_cache") {
    c.output.coefficient_cache = v;
  }
}

}  // namespace

void validate_config(const RunConfig& c) {
  if (c.ensemble.K < kMinEnsembleSize) {
    throw ConfigError("ensemble size below minimum (" + std::to_string(kMinEnsembleSize) + ")", 0,
                      "ensemble.K");
  }
  try {
    (void)c.grid();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), 0, "grid.dt");
  }
  try {
    c.model.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), 0, "model");
  }
  (void)c.initial_state.vector(c.model.n_qubits);
  static const std::vector<std::string> names{"population", "coherence", "concurrence", "trace"};
  for (const auto& o : c.output.observables) {
    if (std::find(names.begin(), names.end(), o) == names.end()) {
      throw ConfigError("unknown observable '" + o + "'", 0, "output.observables");
    }
    if (o == "concurrence" && c.model.n_qubits != 2) {
      throw ConfigError("concurrence needs two qubits", 0, "output.observables");
    }
  }
}

RunConfig parse_config(const std::string& text) {
  Entries entries;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ConfigError("malformed section header", line);
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty() || !known_keys().count(section)) {
        throw ConfigError("unknown section [" + section + "]", line);
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;
    const auto& allowed = known_keys().at(section);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key", line, full);
    }
    if (value.empty()) throw ConfigError("missing value", line, full);
    if (entries.count(full)) throw ConfigError("duplicate key", line, full);
    entries[full] = Entry{value, line};
  }

  RunConfig config;
  const auto scenario = entries.find("scenario");
  if (scenario != entries.end()) {
    try {
      config = scenario_config(scenario->second.value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), scenario->second.line, "scenario");
    }
  } else {
    for (const char* required : {"model.n_qubits", "grid.t_max", "grid.dt", "ensemble.K"}) {
      if (!entries.count(required)) throw ConfigError("missing required key", 0, required);
    }
  }

  for (const auto& [key, entry] : entries) {
    if (key == "scenario") continue;
    if (!config.scenario.empty() && key.rfind("model.", 0) == 0) {
      RunConfig probe = config;
      apply(probe, key, entry);
      if (render_config(probe) != render_config(config)) {
        config.warnings.push_back("line " + std::to_string(entry.line) + ": scenario " +
                                  config.scenario + " overrides '" + key + "'");
      }
      continue;
    }
    apply(config, key, entry);
  }

  try {
    validate_config(config);
  } catch (const ConfigError& e) {
    const auto it = entries.find(e.field());
    if (it != entries.end() && e.line() == 0) {
      std::string message = e.what();
      const std::string prefix = "'" + e.field() + "': ";
      if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
      throw ConfigError(message, it->second.line, e.field());
    }
    throw;
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  if (!c.scenario.empty()) out << "scenario = " << c.scenario << "\n\n";
  const ModelParams& m = c.model;
  out << "[model]\n";
  out << "n_qubits = " << m.n_qubits << "\n";
  out << "omega_s = " << fmt(m.omega_s) << "\n";
  if (m.omega_a) out << "omega_a = " << fmt(*m.omega_a) << "\n";
  if (m.omega_b) out << "omega_b = " << fmt(*m.omega_b) << "\n";
  out << "omega_cav = " << fmt(m.omega_cav) << "\n";
  out << "g = " << fmt(m.g.real()) << "\n";
  out << "g_imag = " << fmt(m.g.imag()) << "\n";
  out << "gamma = " << fmt(m.gamma) << "\n";
  out << "kappa1 = " << fmt(m.kappa1) << "\n";
  out << "kappa2 = " << fmt(m.kappa2) << "\n";
  out << "environment_layer = " << (m.environment_layer ? "true" : "false") << "\n";
  out << "cut_probe = " << (m.cut_probe ? "true" : "false") << "\n";
  if (m.direct_amplitude) out << "direct_amplitude = " << fmt(*m.direct_amplitude) << "\n";
  out << "o34_rotation = "
      << (m.o34_rotation == O34Rotation::AsPrinted ? "as_printed" : "consistent") << "\n";
  out << "pole_ceiling = " << fmt(m.pole_ceiling) << "\n";
  if (c.initial_state.amplitudes.empty()) {
    out << "initial_state = " << c.initial_state.preset << "\n";
  } else {
    std::vector<std::string> items;
    for (Complex a : c.initial_state.amplitudes) items.push_back(fmt_complex(a));
    out << "initial_state = " << join(items) << "\n";
  }
  out << "\n[grid]\n";
  out << "t_max = " << fmt(c.t_max) << "\n";
  out << "dt = " << fmt(c.dt) << "\n";
  out << "\n[ensemble]\n";
  out << "K = " << c.ensemble.K << "\n";
  out << "seed = " << c.ensemble.seed << "\n";
  out << "\n[output]\n";
  out << "directory = " << c.output.directory << "\n";
  if (!c.output.prefix.empty()) out << "prefix = " << c.output.prefix << "\n";
  out << "observables = " << join(c.output.observables) << "\n";
  out << "direct_comparison = " << (c.output.direct_comparison ? "true" : "false") << "\n";
  out << "reference = " << (c.output.reference ? "true" : "false") << "\n";
  if (!c.output.coefficient_cache.empty()) {
    out << "coefficient_cache = " << c.output.coefficient_cache << "\n";
  }
  return out.str();
}

}  // namespace qsdprobe
