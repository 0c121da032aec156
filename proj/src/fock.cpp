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

#include "fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace phonsim {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    fail(ErrorCode::invalid_argument,
         std::string(what) + ": entries must be finite");
  }
}

void require_dim(Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (rows != cols) {
    fail(ErrorCode::invalid_dimension, std::string(what) + ": matrix not square");
  }
  if (rows < 2) {
    fail(ErrorCode::invalid_dimension,
         std::string(what) + ": dimension must be at least 2");
  }
}

}  // namespace

Operator::Operator(Matrix entries) : mat_(std::move(entries)) {
  require_dim(mat_.rows(), mat_.cols(), "Operator");
  require_finite(mat_, "Operator");
}

Ket::Ket(Vector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.rows() < 2) {
    fail(ErrorCode::invalid_dimension, "Ket: dimension must be at least 2");
  }
  if (!amp_.allFinite()) {
    fail(ErrorCode::invalid_argument, "Ket: amplitudes must be finite");
  }
}

Ket Ket::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    fail(ErrorCode::invalid_argument, "Ket: cannot normalize zero vector");
  }
  return Ket(amplitudes / n);
}

Ket Ket::fock(int n, int dim) {
  if (dim < 2) fail(ErrorCode::invalid_dimension, "Ket::fock: dim must be >= 2");
  if (n < 0 || n >= dim) {
    fail(ErrorCode::invalid_argument, "Ket::fock: level outside truncation");
  }
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return Ket(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : mat_(std::move(entries)) {
  require_dim(mat_.rows(), mat_.cols(), "DensityMatrix");
  require_finite(mat_, "DensityMatrix");
  const double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10) {
    fail(ErrorCode::invalid_argument,
         "DensityMatrix: Hermiticity violated by " + std::to_string(herm));
  }
  const double tr_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
  if (tr_err > 1e-8) {
    fail(ErrorCode::invalid_argument,
         "DensityMatrix: trace deviates from 1 by " + std::to_string(tr_err));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (mat_ + mat_.adjoint()),
                                           Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-8) {
    fail(ErrorCode::invalid_argument,
         "DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::from_ket(const Ket& psi) {
  const Vector v = psi.vec() / psi.vec().norm();
  return DensityMatrix(v * v.adjoint());
}

Operator identity_op(int dim) {
  if (dim < 2) fail(ErrorCode::invalid_dimension, "identity_op: dim must be >= 2");
  return Operator(Matrix::Identity(dim, dim));
}

Operator annihilation_op(int dim) {
  if (dim < 2) {
    fail(ErrorCode::invalid_dimension, "annihilation_op: dim must be >= 2");
  }
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return Operator(std::move(a));
}

Operator creation_op(int dim) { return annihilation_op(dim).adjoint(); }

Operator number_op(int dim) {
  if (dim < 2) fail(ErrorCode::invalid_dimension, "number_op: dim must be >= 2");
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return Operator(std::move(n));
}

Operator displacement_op(Complex xi, int dim) {
  if (dim < 2) {
    fail(ErrorCode::invalid_dimension, "displacement_op: dim must be >= 2");
  }
  if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag())) {
    fail(ErrorCode::invalid_argument, "displacement_op: xi must be finite");
  }
  const Matrix gen = xi * creation_op(dim).mat() - std::conj(xi) * annihilation_op(dim).mat();
  return Operator(gen.exp());
}

Operator parity_op(int dim) {
  if (dim < 2) fail(ErrorCode::invalid_dimension, "parity_op: dim must be >= 2");
  Matrix p = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return Operator(std::move(p));
}

Operator tensor(const Operator& left, const Operator& right) {
  const int dl = left.dim();
  const int dr = right.dim();
  Matrix out(dl * dr, dl * dr);
  for (int i = 0; i < dl; ++i) {
    for (int j = 0; j < dl; ++j) {
      out.block(i * dr, j * dr, dr, dr) = left.mat()(i, j) * right.mat();
    }
  }
  return Operator(std::move(out));
}

Complex expectation(const DensityMatrix& rho, const Operator& op) {
  if (rho.dim() != op.dim()) {
    fail(ErrorCode::dimension_mismatch,
         "expectation: state dim " + std::to_string(rho.dim()) +
             " vs operator dim " + std::to_string(op.dim()));
  }
  return (rho.mat() * op.mat()).trace();
}

Complex expectation(const Ket& psi, const Operator& op) {
  if (psi.dim() != op.dim()) {
    fail(ErrorCode::dimension_mismatch,
         "expectation: state dim " + std::to_string(psi.dim()) +
             " vs operator dim " + std::to_string(op.dim()));
  }
  return psi.vec().dot(op.mat() * psi.vec());
}

double expectation_real(const DensityMatrix& rho, const Operator& op,
                        double imag_tol) {
  const Complex v = expectation(rho, op);
  if (op.is_hermitian() && std::abs(v.imag()) > imag_tol) {
    fail(ErrorCode::numerical_degeneracy,
         "expectation_real: imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

DensityMatrix thermal_state(double nbar, int dim) {
  if (dim < 2) fail(ErrorCode::invalid_dimension, "thermal_state: dim must be >= 2");
  if (nbar < 0) fail(ErrorCode::invalid_argument, "thermal_state: nbar must be >= 0");
  Matrix rho = Matrix::Zero(dim, dim);
  if (nbar == 0.0) {
    rho(0, 0) = 1.0;
    return DensityMatrix(std::move(rho));
  }
  const double q = nbar / (1.0 + nbar);
  double w = 1.0, total = 0.0;
  for (int n = 0; n < dim; ++n) {
    rho(n, n) = w;
    total += w;
    w *= q;
  }
  rho /= total;
  return DensityMatrix(std::move(rho));
}

Operator sigma_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return Operator(std::move(m));
}

Operator sigma_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return Operator(std::move(m));
}

Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return Operator(std::move(m));
}

Operator sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return Operator(std::move(m));
}

}  // namespace phonsim
