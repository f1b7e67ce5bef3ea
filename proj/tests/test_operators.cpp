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

#include <doctest.h>

#include <random>

#include "qsdprobe/operators.hpp"

using namespace qsdprobe;

namespace {

ComplexMatrix random_matrix(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Complex(d(gen), d(gen));
  }
  return m;
}

ComplexMatrix random_state(int n, unsigned seed) {
  const ComplexMatrix a = random_matrix(n, seed);
  const ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("tensor product of identities and basis actions") {
  CHECK(tensor_product(ops::identity(2), ops::identity(2)).isApprox(ops::identity(4)));

  const ComplexMatrix lower_a = tensor_product(ops::sigma_minus(), ops::identity(2));
  const ComplexVector s11 = ops::basis_state(4, 3);
  CHECK((lower_a * s11).isApprox(ops::basis_state(4, 1)));

  const ComplexMatrix zz = tensor_product(ops::sigma_z(), ops::sigma_z());
  const ComplexVector s01 = ops::basis_state(4, 1);
  CHECK((zz * s01).isApprox(-s01));
}

TEST_CASE("tensor product works for real scalars") {
  const Eigen::Matrix2d z = ops::sigma_z<double>();
  const Eigen::MatrixXd zz = tensor_product(z, z);
  CHECK(zz(0, 0) == 1.0);
  CHECK(zz(1, 1) == -1.0);
  CHECK(zz(3, 3) == 1.0);
}

TEST_CASE("commutators") {
  CHECK(commutator(ops::sigma_z(), ops::sigma_z()).isZero());
  CHECK(commutator(ops::sigma_plus(), ops::sigma_minus()).isApprox(ops::sigma_z()));

  // Truncated ladder operators: [a, a^dag] = I except the last diagonal entry.
  const ComplexMatrix a = ops::annihilation(3);
  const ComplexMatrix c = commutator(a, dagger(a));
  ComplexMatrix expected = ops::identity(4);
  expected(3, 3) = -3.0;
  CHECK((c - expected).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS(commutator(ops::identity(2), ops::identity(3)), DimensionMismatch);
}

TEST_CASE("dagger") {
  CHECK(dagger(ops::sigma_minus()).isApprox(ops::sigma_plus()));
  const ComplexMatrix iI = kI * ops::identity(2);
  CHECK(dagger(iI).isApprox(-iI));
  const ComplexMatrix m = random_matrix(5, 3);
  CHECK(dagger(dagger(m)) == m);
}

TEST_CASE("expectation values") {
  CHECK(expectation(ops::basis_state(2, 1), ops::sigma_z()) == Complex(1.0));
  CHECK(expectation(ops::basis_state(2, 0), ops::sigma_z()) == Complex(-1.0));
  const ComplexVector bell = (ops::basis_state(4, 0) + ops::basis_state(4, 3)) / std::sqrt(2.0);
  CHECK(std::abs(expectation(bell, ops::on_qubit(ops::sigma_z(), 0))) < 1e-15);
  CHECK_THROWS_AS(expectation(ops::basis_state(3, 0), ops::sigma_z()), DimensionMismatch);
}

TEST_CASE("partial traces") {
  const ComplexMatrix ra = random_state(2, 5);
  const ComplexMatrix rb = 2.0 * random_state(3, 6);
  const ComplexMatrix prod = tensor_product(ra, rb);
  CHECK(partial_trace(prod, 2, 3).isApprox(ra * rb.trace()));
  CHECK(partial_trace_first(prod, 2, 3).isApprox(rb * ra.trace()));

  const ComplexVector bell = (ops::basis_state(4, 0) + ops::basis_state(4, 3)) / std::sqrt(2.0);
  const ComplexMatrix p = bell * bell.adjoint();
  CHECK(partial_trace(p, 2, 2).isApprox(0.5 * ops::identity(2)));
  CHECK(partial_trace_first(p, 2, 2).isApprox(0.5 * ops::identity(2)));

  const ComplexMatrix rho = random_state(6, 9);
  CHECK(std::abs(partial_trace(rho, 2, 3).trace() - rho.trace()) < 1e-14);
  CHECK(std::abs(partial_trace(rho, 3, 2).trace() - rho.trace()) < 1e-14);
  CHECK_THROWS_AS(partial_trace(rho, 4, 2), DimensionMismatch);
}

TEST_CASE("on_qubit embeds A and B factors") {
  CHECK(ops::on_qubit(ops::sigma_minus(), 0).isApprox(
      tensor_product(ops::sigma_minus(), ops::identity(2))));
  CHECK(ops::on_qubit(ops::sigma_minus(), 1).isApprox(
      tensor_product(ops::identity(2), ops::sigma_minus())));
}

TEST_CASE("hermiticity check") {
  CHECK(is_hermitian(ops::sigma_y()));
  CHECK_FALSE(is_hermitian(ops::sigma_minus()));
  const ComplexMatrix a = ops::annihilation(4);
  CHECK(is_hermitian(dagger(a) * a));
}
