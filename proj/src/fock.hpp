// Copyright 2026 The phonsim Authors
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

#ifndef PHONSIM_FOCK_HPP
#define PHONSIM_FOCK_HPP

#include <Eigen/Dense>
#include <complex>

#include "errors.hpp"

namespace phonsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Dense operator on a truncated Fock (or qubit x Fock) space.
/// All entries must be finite; dim >= 2. Immutable after construction.
class Operator {
 public:
  explicit Operator(Matrix entries);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

  Operator adjoint() const { return Operator(mat_.adjoint()); }
  bool is_hermitian(double tol = 1e-12) const {
    return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  Matrix mat_;
};

/// Pure state on the truncated space; normalized factory provided.
class Ket {
 public:
  explicit Ket(Vector amplitudes);
  static Ket normalized(Vector amplitudes);
  static Ket fock(int n, int dim);

  int dim() const { return static_cast<int>(amp_.rows()); }
  const Vector& vec() const { return amp_; }
  double norm() const { return amp_.norm(); }

 private:
  Vector amp_;
};

/// Density matrix: Hermitian to 1e-10, unit trace to 1e-8,
/// minimum eigenvalue >= -1e-8. Checked at construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);
  static DensityMatrix from_ket(const Ket& psi);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }
  double population(int n) const { return mat_(n, n).real(); }

 private:
  Matrix mat_;
};

Operator identity_op(int dim);

/// <n-1|a|n> = sqrt(n); creation operator is the adjoint.
Operator annihilation_op(int dim);
Operator creation_op(int dim);
Operator number_op(int dim);

/// D(xi) = exp(xi a^dag - conj(xi) a) on the truncated space.
Operator displacement_op(Complex xi, int dim);

/// diag((-1)^n)
Operator parity_op(int dim);

/// Kronecker product; the left factor is the slow index.
Operator tensor(const Operator& left, const Operator& right);

Complex expectation(const DensityMatrix& rho, const Operator& op);
Complex expectation(const Ket& psi, const Operator& op);

/// Real part of the expectation of a Hermitian operator; fails when the
/// imaginary residue exceeds imag_tol.
double expectation_real(const DensityMatrix& rho, const Operator& op,
                        double imag_tol = 1e-10);

/// Geometric thermal state normalized on the truncated space.
DensityMatrix thermal_state(double nbar, int dim);

// Two-level operators, basis order {|g>, |e>} (sigma_z = |e><e| - |g><g|).
Operator sigma_z();
Operator sigma_x();
Operator sigma_plus();
Operator sigma_minus();

}  // namespace phonsim

#endif
