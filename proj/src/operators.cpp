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

#include "qsdprobe/operators.hpp"

#include <cmath>

namespace qsdprobe {

ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index keep_dims,
                            Eigen::Index trace_dims) {
  if (keep_dims <= 0 || trace_dims <= 0 || rho.rows() != rho.cols() ||
      rho.rows() != keep_dims * trace_dims) {
    throw DimensionMismatch("partial_trace: matrix does not factor as keep x traced");
  }
  ComplexMatrix out = ComplexMatrix::Zero(keep_dims, keep_dims);
  for (Eigen::Index i = 0; i < keep_dims; ++i) {
    for (Eigen::Index j = 0; j < keep_dims; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index k = 0; k < trace_dims; ++k) {
        acc += rho(i * trace_dims + k, j * trace_dims + k);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& rho, Eigen::Index trace_dims,
                                  Eigen::Index keep_dims) {
  if (keep_dims <= 0 || trace_dims <= 0 || rho.rows() != rho.cols() ||
      rho.rows() != keep_dims * trace_dims) {
    throw DimensionMismatch("partial_trace_first: matrix does not factor as traced x keep");
  }
  ComplexMatrix out = ComplexMatrix::Zero(keep_dims, keep_dims);
  for (Eigen::Index k = 0; k < trace_dims; ++k) {
    out += rho.block(k * keep_dims, k * keep_dims, keep_dims, keep_dims);
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace ops {

ComplexMatrix annihilation(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("Fock cutoff must be at least 1");
  ComplexMatrix a = ComplexMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix on_qubit(const Eigen::Matrix2cd& op, int which) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  switch (which) {
    case 0:
      return tensor_product(op, id);
    case 1:
      return tensor_product(id, op);
    default:
      throw InvalidArgument("qubit index must be 0 (A) or 1 (B)");
  }
}

ComplexVector basis_state(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw InvalidArgument("basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

}  // namespace ops
}  // namespace qsdprobe
