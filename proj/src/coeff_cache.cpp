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

#include "qsdprobe/coeff_cache.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsdprobe/csv.hpp"

namespace qsdprobe {

namespace {

constexpr char kMagic[8] = {'Q', 'S', 'D', 'P', 'C', 'O', 'E', 'F'};

class Writer {
 public:
  void u32(std::uint32_t v) { bytes(v, 4); }
  void u64(std::uint64_t v) { bytes(v, 8); }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void c128(Complex v) {
    f64(v.real());
    f64(v.imag());
  }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  std::string take() { return std::move(out_); }

 private:
  void bytes(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(bytes(4)); }
  std::uint64_t u64() { return bytes(8); }
  double f64() { return std::bit_cast<double>(u64()); }
  Complex c128() {
    const double re = f64();
    return Complex(re, f64());
  }
  void raw(char* p, std::size_t n) {
    need(n);
    std::memcpy(p, in_.data() + pos_, n);
    pos_ += n;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > in_.size()) throw Error("coefficient cache is truncated");
  }
  std::uint64_t bytes(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  const std::string& in_;
  std::size_t pos_ = 0;
};

void write_kernel(Writer& w, const CorrelationKernel& k) {
  w.u32(static_cast<std::uint32_t>(k.kind));
  w.c128(k.g);
  w.f64(k.omega);
  w.f64(k.gamma);
  w.f64(k.amplitude);
}

CorrelationKernel read_kernel(Reader& r) {
  CorrelationKernel k;
  const std::uint32_t kind = r.u32();
  if (kind > 2) throw Error("coefficient cache has an unknown kernel kind");
  k.kind = static_cast<KernelKind>(kind);
  k.g = r.c128();
  k.omega = r.f64();
  k.gamma = r.f64();
  k.amplitude = r.f64();
  return k;
}

template <int S>
void write_table(Writer& w, const CoefficientTable<S>& t) {
  for (const auto* m : {&t.values, &t.derivs}) {
    for (Eigen::Index k = 0; k < m->rows(); ++k) {
      for (Eigen::Index j = 0; j < S; ++j) w.c128((*m)(k, j));
    }
  }
}

template <int S>
void read_table(Reader& r, const TimeGrid& grid, CoefficientTable<S>& t) {
  t.grid = grid;
  const auto rows = static_cast<Eigen::Index>(grid.size());
  t.values.resize(rows, S);
  t.derivs.resize(rows, S);
  for (auto* m : {&t.values, &t.derivs}) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      for (Eigen::Index j = 0; j < S; ++j) (*m)(k, j) = r.c128();
    }
  }
}

void write_system(Writer& w, const OneQubitSystem& s) {
  for (Complex c : {s.a_alpha, s.lambda_alpha, s.a_beta, s.lambda_beta}) w.c128(c);
  w.f64(s.kappa);
  w.f64(s.omega);
}

void write_system(Writer& w, const TwoQubitSystem& s) {
  for (Complex c : {s.a_alpha, s.lambda_alpha, s.a_beta, s.lambda_beta}) w.c128(c);
  for (double d : {s.kappa1, s.kappa2, s.omega_a, s.omega_b}) w.f64(d);
  for (int j = 0; j < 4; ++j) w.f64(s.omega_j[j]);
}

template <class Coeff>
std::string system_bytes(const Coeff& c) {
  Writer w;
  write_system(w, c.system);
  write_kernel(w, c.kernels.first);
  write_kernel(w, c.kernels.second);
  return w.take();
}

}  // namespace

std::string serialize_coefficients(const Coefficients& coeffs) {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.u32(kCoefficientCacheVersion);
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        constexpr bool two = std::is_same_v<T, TwoQubitCoeffs>;
        w.u32(two ? 2 : 1);
        w.u32(two ? 12 : 2);
        w.f64(c.grid.t_max);
        w.f64(c.grid.dt);
        w.u64(c.grid.n_steps);
        write_kernel(w, c.kernels.first);
        write_kernel(w, c.kernels.second);
        write_system(w, c.system);
        write_table(w, c);
      },
      coeffs);
  return w.take();
}

Coefficients deserialize_coefficients(const std::string& bytes) {
  Reader r(bytes);
  char magic[8];
  r.raw(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw Error("not a coefficient cache file");
  const std::uint32_t version = r.u32();
  if (version != kCoefficientCacheVersion) {
    throw Error("unsupported coefficient cache version " + std::to_string(version));
  }
  const std::uint32_t qubits = r.u32();
  const std::uint32_t states = r.u32();
  TimeGrid grid;
  grid.t_max = r.f64();
  grid.dt = r.f64();
  grid.n_steps = r.u64();
  KernelPair kernels{read_kernel(r), read_kernel(r)};
  auto read_complex4 = [&](Complex& a, Complex& b, Complex& c, Complex& d) {
    a = r.c128();
    b = r.c128();
    c = r.c128();
    d = r.c128();
  };
  Coefficients out;
  if (qubits == 1 && states == 2) {
    OneQubitCoeffs c;
    c.kernels = kernels;
    read_complex4(c.system.a_alpha, c.system.lambda_alpha, c.system.a_beta, c.system.lambda_beta);
    c.system.kappa = r.f64();
    c.system.omega = r.f64();
    read_table(r, grid, c);
    out = std::move(c);
  } else if (qubits == 2 && states == 12) {
    TwoQubitCoeffs c;
    c.kernels = kernels;
    read_complex4(c.system.a_alpha, c.system.lambda_alpha, c.system.a_beta, c.system.lambda_beta);
    c.system.kappa1 = r.f64();
    c.system.kappa2 = r.f64();
    c.system.omega_a = r.f64();
    c.system.omega_b = r.f64();
    for (int j = 0; j < 4; ++j) c.system.omega_j[j] = r.f64();
    read_table(r, grid, c);
    out = std::move(c);
  } else {
    throw Error("coefficient cache has an inconsistent header");
  }
  if (!r.done()) throw Error("coefficient cache has trailing bytes");
  return out;
}

void write_coefficients(const std::string& path, const Coefficients& coeffs) {
  write_file_atomic(path, serialize_coefficients(coeffs));
}

Coefficients read_coefficients(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read coefficient cache " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return deserialize_coefficients(ss.str());
}

std::optional<Coefficients> load_matching_coefficients(const std::string& path,
                                                       const ModelParams& params,
                                                       const KernelPair& kernels,
                                                       const TimeGrid& grid) {
  if (path.empty() || !std::filesystem::exists(path)) return std::nullopt;
  Coefficients cached = read_coefficients(path);
  if (!(coefficient_grid(cached) == grid)) return std::nullopt;
  std::string expected;
  if (params.n_qubits == 1) {
    OneQubitCoeffs probe;
    probe.system = OneQubitSystem::make(params, kernels);
    probe.kernels = kernels;
    expected = system_bytes(probe);
  } else {
    TwoQubitCoeffs probe;
    probe.system = TwoQubitSystem::make(params, kernels);
    probe.kernels = kernels;
    expected = system_bytes(probe);
  }
  const std::string actual =
      std::visit([](const auto& c) { return system_bytes(c); }, cached);
  if (actual != expected) return std::nullopt;
  return cached;
}

}  // namespace qsdprobe
