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

#include "qsdprobe/trajectory.hpp"

#include <cmath>

#include "qsdprobe/rk4.hpp"

namespace qsdprobe {

namespace detail {

template <int Dim>
struct Tables {
  using Matrix = Eigen::Matrix<Complex, Dim, Dim>;
  static constexpr int kAux = Dim == 4 ? 4 : 0;
  using Extended = Eigen::Matrix<Complex, Dim + kAux, 1>;

  TimeGrid grid;
  Matrix lindblad;
  Matrix pair;            // O5
  Matrix lindblad_pair;   // L^dag O5
  std::vector<Matrix> drift;  // -iH_s - L^dag Oz, indexed by stage
  std::vector<Matrix> oz;
  std::vector<Matrix> oy;
  std::vector<TwoQubitBoundary> boundary;
  std::vector<Eigen::Matrix2cd> coupling;

  std::size_t stages() const { return 2 * grid.n_steps + 1; }

  Extended rhs(std::size_t s, Complex z, Complex y, const Extended& x) const {
    using Vec = Eigen::Matrix<Complex, Dim, 1>;
    const Vec psi = x.template head<Dim>();
    const Vec oz_psi = oz[s] * psi;
    const Vec oy_psi = oy[s] * psi;
    Extended d;
    Vec dpsi = drift[s] * psi + z * (lindblad * psi) - (kI * y) * oz_psi - (kI * z) * oy_psi;
    if constexpr (kAux > 0) {
      const Complex phi = x[Dim] + x[Dim + 2];
      const Complex chi = x[Dim + 1] + x[Dim + 3];
      dpsi += (-kI * phi) * (lindblad_pair * psi) + (y * phi + z * chi) * (pair * psi);
      const Eigen::Matrix2cd& a = coupling[s];
      const TwoQubitBoundary& b = boundary[s];
      d[Dim] = b.n5 * z + a(0, 0) * x[Dim] + a(0, 1) * x[Dim + 1];
      d[Dim + 1] = b.m5 * z + a(1, 0) * x[Dim] + a(1, 1) * x[Dim + 1];
      d[Dim + 2] = b.n6 * y + a(0, 0) * x[Dim + 2] + a(0, 1) * x[Dim + 3];
      d[Dim + 3] = b.m6 * y + a(1, 0) * x[Dim + 2] + a(1, 1) * x[Dim + 3];
    }
    d.template head<Dim>() = dpsi;
    return d;
  }

  Matrix matrix(std::size_t s, Complex z, Complex y, Complex phi, Complex chi) const {
    Matrix g = drift[s] + z * lindblad - (kI * y) * oz[s] - (kI * z) * oy[s];
    if constexpr (kAux > 0) g += (-kI * phi) * lindblad_pair + (y * phi + z * chi) * pair;
    return g;
  }
};

Tables<2> make_tables(const ModelParams& params, const OneQubitCoeffs& c) {
  Tables<2> t;
  t.grid = c.grid;
  const Eigen::Matrix2cd sm = ops::sigma_minus();
  const Eigen::Matrix2cd h = 0.5 * params.qubit_frequency(0) * ops::sigma_z();
  t.lindblad = c.system.kappa * sm;
  t.pair.setZero();
  t.lindblad_pair.setZero();
  const std::size_t n = t.stages();
  t.drift.resize(n);
  t.oz.resize(n);
  t.oy.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto v = (s % 2 == 0) ? c.at(s / 2) : c.midpoint(s / 2);
    t.oz[s] = v[0] * sm;
    t.oy[s] = v[1] * sm;
    t.drift[s] = -kI * h - t.lindblad.adjoint() * t.oz[s];
  }
  return t;
}

Tables<4> make_tables(const ModelParams& params, const TwoQubitCoeffs& c) {
  Tables<4> t;
  t.grid = c.grid;
  const Eigen::Matrix2cd sm = ops::sigma_minus();
  const Eigen::Matrix2cd sz = ops::sigma_z();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix4cd basis[5] = {tensor_product(sm, id), tensor_product(id, sm),
                                     tensor_product(sz, sm), tensor_product(sm, sz),
                                     tensor_product(sm, sm)};
  const Eigen::Matrix4cd h = 0.5 * params.qubit_frequency(0) * tensor_product(sz, id) +
                             0.5 * params.qubit_frequency(1) * tensor_product(id, sz);
  t.lindblad = c.system.kappa1 * basis[0] + c.system.kappa2 * basis[1];
  t.pair = basis[4];
  t.lindblad_pair = t.lindblad.adjoint() * t.pair;
  const std::size_t n = t.stages();
  t.drift.resize(n);
  t.oz.resize(n);
  t.oy.resize(n);
  t.boundary.resize(n);
  t.coupling.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    const TwoQubitSystem::State v = (s % 2 == 0) ? c.at(s / 2) : c.midpoint(s / 2);
    t.oz[s].setZero();
    t.oy[s].setZero();
    for (int j = 0; j < 4; ++j) {
      t.oz[s] += v[TwoQubitSystem::kN1 + j] * basis[j];
      t.oy[s] += v[TwoQubitSystem::kM1 + j] * basis[j];
    }
    t.drift[s] = -kI * h - t.lindblad.adjoint() * t.oz[s];
    t.boundary[s] = c.system.boundary(v);
    t.coupling[s] = c.system.coupling(t.boundary[s]);
  }
  return t;
}

std::vector<Complex> stage_values(const NoiseRealization& path) {
  const std::size_t n = path.grid.n_steps;
  std::vector<Complex> out(2 * n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    out[2 * k] = path[k];
    if (k < n) out[2 * k + 1] = path.midpoint(k);
  }
  return out;
}

}  // namespace detail

using detail::Tables;

class GeneratorTables {
 public:
  std::variant<Tables<2>, Tables<4>> tables;
};

std::shared_ptr<const GeneratorTables> build_generator_tables(const ModelParams& params,
                                                              const Coefficients& coeffs) {
  auto out = std::make_shared<GeneratorTables>();
  if (const auto* one = std::get_if<OneQubitCoeffs>(&coeffs)) {
    out->tables = detail::make_tables(params, *one);
  } else {
    out->tables = detail::make_tables(params, std::get<TwoQubitCoeffs>(coeffs));
  }
  return out;
}

EffectiveGenerator::EffectiveGenerator(std::shared_ptr<const GeneratorTables> tables,
                                       NoiseRealization z, NoiseRealization y)
    : tables_(std::move(tables)), z_(std::move(z)), y_(std::move(y)) {
  if (!tables_) throw InvalidArgument("generator tables are missing");
  if (!(z_.grid == grid()) || !(y_.grid == grid())) {
    throw DimensionMismatch("noise grids differ from the coefficient grid");
  }
  zs_ = detail::stage_values(z_);
  ys_ = detail::stage_values(y_);
}

int EffectiveGenerator::dimension() const {
  return std::visit([](const auto& t) { return static_cast<int>(t.lindblad.rows()); },
                    tables_->tables);
}

const TimeGrid& EffectiveGenerator::grid() const {
  return std::visit([](const auto& t) -> const TimeGrid& { return t.grid; }, tables_->tables);
}

ComplexMatrix EffectiveGenerator::matrix(std::size_t k, Complex phi, Complex psi) const {
  if (k > grid().n_steps) throw InvalidArgument("grid index out of range");
  const std::size_t s = 2 * k;
  return std::visit(
      [&](const auto& t) -> ComplexMatrix { return t.matrix(s, zs_[s], ys_[s], phi, psi); },
      tables_->tables);
}

EffectiveGenerator build_effective_generator(const ModelParams& params,
                                             const Coefficients& coeffs,
                                             const NoiseRealization& z_path,
                                             const NoiseRealization& y_path) {
  if (!(z_path.grid == coefficient_grid(coeffs)) || !(y_path.grid == coefficient_grid(coeffs))) {
    throw DimensionMismatch("noise grids differ from the coefficient grid");
  }
  return EffectiveGenerator(build_generator_tables(params, coeffs), z_path, y_path);
}

namespace {

template <int Dim>
std::optional<double> integrate(const Tables<Dim>& t, const EffectiveGenerator& gen,
                                const ComplexVector& psi0, ComplexMatrix& out) {
  using Extended = typename Tables<Dim>::Extended;
  const std::size_t n = t.grid.n_steps;
  out.resize(Dim, static_cast<Eigen::Index>(n + 1));
  Extended x = Extended::Zero();
  x.template head<Dim>() = psi0;
  const double limit = kOverflowNorm * kOverflowNorm;
  for (std::size_t k = 0;; ++k) {
    const auto psi = x.template head<Dim>();
    const double norm2 = psi.squaredNorm();
    if (!std::isfinite(norm2) || norm2 > limit || !x.allFinite()) return t.grid.time(k);
    out.col(static_cast<Eigen::Index>(k)) = psi;
    if (k == n) break;
    auto f = [&](int stage, const Extended& y) -> Extended {
      const std::size_t s = 2 * k + static_cast<std::size_t>(stage);
      return t.rhs(s, gen.z_stage(s), gen.y_stage(s), y);
    };
    x = rk4_step<Extended>(f, x, t.grid.dt);
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> integrate_trajectory(const EffectiveGenerator& generator,
                                           const ComplexVector& psi0, ComplexMatrix& psi) {
  if (psi0.size() != generator.dimension()) {
    throw DimensionMismatch("initial state dimension differs from the model");
  }
  return std::visit([&](const auto& t) { return integrate(t, generator, psi0, psi); },
                    generator.tables().tables);
}

TrajectoryState run_trajectory(const EffectiveGenerator& generator, const ComplexVector& psi0,
                               const TimeGrid& grid) {
  if (!(grid == generator.grid())) throw DimensionMismatch("grid differs from the generator");
  if (std::abs(psi0.norm() - 1.0) > tolerance::kNormalization) {
    throw InvalidArgument("initial state must be normalized");
  }
  TrajectoryState out;
  out.grid = grid;
  out.z_seed = generator.z_path().seed;
  out.y_seed = generator.y_path().seed;
  if (const auto failure = integrate_trajectory(generator, psi0, out.psi)) {
    throw NonFiniteValue(*failure, "trajectory state");
  }
  return out;
}

}  // namespace qsdprobe
