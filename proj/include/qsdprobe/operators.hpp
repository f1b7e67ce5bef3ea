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

#pragma once

// Dense operator algebra for qubit and qubit-cavity Hilbert spaces.
//
// Conventions used everywhere in the library:
//   - a qubit basis state |q> has q = 0 for ground and q = 1 for excited;
//   - sigma_z = diag(-1, +1), sigma_- = |0><1|;
//   - composite spaces are ordered A (x) B, and system (x) cavity, so the
//     two-qubit state |q_A q_B> has index 2 q_A + q_B.

#include <Eigen/Dense>

#include <complex>

#include "qsdprobe/errors.hpp"

namespace qsdprobe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

namespace tolerance {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kNormalization = 1e-10;
inline constexpr double kTrace = 1e-12;
}  // namespace tolerance

/// Kronecker product a (x) b.
template <class DerivedA, class DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> tensor_product(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <class DerivedA, class DerivedB>
typename DerivedA::PlainObject commutator(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionMismatch("commutator needs square operands of equal size");
  }
  return a * b - b * a;
}

template <class Derived>
auto dagger(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint().eval();
}

/// <state| op |state>; the state is not renormalized.
template <class DerivedV, class DerivedM>
typename DerivedM::Scalar expectation(const Eigen::MatrixBase<DerivedV>& state,
                                      const Eigen::MatrixBase<DerivedM>& op) {
  if (op.rows() != op.cols() || op.cols() != state.size()) {
    throw DimensionMismatch("expectation: operator and state dimensions differ");
  }
  return state.dot(op * state);
}

/// Trace over the second factor of a (keep (x) traced) operator.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index keep_dims,
                            Eigen::Index trace_dims);

/// Trace over the first factor of a (traced (x) keep) operator.
ComplexMatrix partial_trace_first(const ComplexMatrix& rho, Eigen::Index trace_dims,
                                  Eigen::Index keep_dims);

bool is_hermitian(const ComplexMatrix& m, double tol = tolerance::kHermitian);

namespace ops {

template <class Scalar = Complex>
Eigen::Matrix<Scalar, 2, 2> sigma_minus() {
  Eigen::Matrix<Scalar, 2, 2> m = Eigen::Matrix<Scalar, 2, 2>::Zero();
  m(0, 1) = Scalar(1);
  return m;
}

template <class Scalar = Complex>
Eigen::Matrix<Scalar, 2, 2> sigma_plus() {
  return sigma_minus<Scalar>().adjoint();
}

template <class Scalar = Complex>
Eigen::Matrix<Scalar, 2, 2> sigma_z() {
  Eigen::Matrix<Scalar, 2, 2> m = Eigen::Matrix<Scalar, 2, 2>::Zero();
  m(0, 0) = Scalar(-1);
  m(1, 1) = Scalar(1);
  return m;
}

inline Eigen::Matrix2cd sigma_y() {
  Eigen::Matrix2cd m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

/// Truncated bosonic annihilation operator on Fock states 0..cutoff.
ComplexMatrix annihilation(int cutoff);

/// Single-qubit operator acting on qubit `which` (0 = A, 1 = B) of a pair.
ComplexMatrix on_qubit(const Eigen::Matrix2cd& op, int which);

/// Basis state |index> of dimension dim.
ComplexVector basis_state(Eigen::Index dim, Eigen::Index index);

}  // namespace ops
}  // namespace qsdprobe
