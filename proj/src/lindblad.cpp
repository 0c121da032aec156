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

#include "lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <string>

namespace phonsim {

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, int dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix commutator_superop(const Operator& op) {
  const int n = op.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix left = Eigen::kroneckerProduct(id, op.mat());
  const Matrix right = Eigen::kroneckerProduct(op.mat().transpose(), id);
  return -kI * (left - right);
}

namespace {

// conj(C) x C - (I x C^dag C + (C^dag C)^T x I) / 2
Matrix dissipator_superop(const Matrix& c) {
  const Eigen::Index n = c.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix cdc = c.adjoint() * c;
  Matrix out = Eigen::kroneckerProduct(c.conjugate(), c);
  out -= 0.5 * Eigen::kroneckerProduct(id, cdc);
  out -= 0.5 * Eigen::kroneckerProduct(cdc.transpose(), id);
  return out;
}

}  // namespace

Liouvillian build_liouvillian(const Operator& h_static, double gamma,
                              double nbar) {
  if (gamma < 0.0) fail(ErrorCode::invalid_argument, "gamma must be >= 0");
  if (nbar < 0.0) fail(ErrorCode::invalid_argument, "nbar must be >= 0");

  const int dim = h_static.dim();
  Liouvillian liou;
  liou.dim = dim;
  liou.gamma = gamma;
  liou.nbar = nbar;

  const Matrix a = annihilation_op(dim).mat();
  const Matrix c1 = std::sqrt(gamma * (nbar + 1.0)) * a;
  const Matrix c2 = std::sqrt(gamma * nbar) * a.adjoint();
  liou.collapse_ops.push_back(Operator(c1));
  liou.collapse_ops.push_back(Operator(c2));

  liou.matrix = commutator_superop(h_static);
  liou.matrix += dissipator_superop(c1);
  liou.matrix += dissipator_superop(c2);
  return liou;
}

BlockadeObservables observables_from(const std::vector<double>& times,
                                     const std::vector<DensityMatrix>& states) {
  BlockadeObservables obs;
  obs.times = times;
  for (const auto& rho : states) {
    std::vector<double> p(rho.dim());
    double total = 0.0;
    for (int n = 0; n < rho.dim(); ++n) {
      p[n] = rho.population(n);
      total += p[n];
    }
    if (std::abs(total - 1.0) > 1e-6) {
      fail(ErrorCode::numerical_degeneracy,
           "population sum deviates from 1 by " + std::to_string(total - 1.0));
    }
    obs.fidelity.push_back(p[0] + p[1]);
    obs.coherence_re.push_back(rho.mat()(0, 1).real());
    obs.coherence_im.push_back(rho.mat()(0, 1).imag());
    obs.populations.push_back(std::move(p));
  }
  return obs;
}

BlockadeObservables evolve(const DensityMatrix& rho0, const Liouvillian& liou,
                           const std::vector<DriveTerm>& drive_terms,
                           const std::vector<double>& times,
                           std::vector<DensityMatrix>* snapshots,
                           const Dopri5Options& opts) {
  if (rho0.dim() != liou.dim) {
    fail(ErrorCode::dimension_mismatch, "evolve: state/Liouvillian dimension");
  }
  if (times.empty() || times.front() != 0.0) {
    fail(ErrorCode::invalid_argument, "evolve: times must start at 0");
  }

  // Pre-assemble the superoperators of each drive term so the RHS only
  // scales them by the oscillating phases.
  struct DriveSuper {
    Matrix fwd;   // -i[op, .]
    Matrix bwd;   // -i[op^dag, .]
    Complex freq;
  };
  std::vector<DriveSuper> drives;
  for (const auto& d : drive_terms) {
    if (d.op.dim() != liou.dim) {
      fail(ErrorCode::dimension_mismatch, "evolve: drive term dimension");
    }
    drives.push_back({commutator_superop(d.op),
                      commutator_superop(d.op.adjoint()), d.frequency});
  }

  const auto rhs = [&](double t, const Vector& y, Vector& dy) {
    dy.noalias() = liou.matrix * y;
    for (const auto& d : drives) {
      const Complex ph = std::exp(-kI * d.freq * t);
      dy.noalias() += ph * (d.fwd * y);
      dy.noalias() += std::conj(ph) * (d.bwd * y);
    }
  };

  std::vector<DensityMatrix> states;
  states.reserve(times.size());
  integrate_dopri5(rhs, vec(rho0.mat()), times,
                   [&](std::size_t, double, const Vector& y) {
                     states.emplace_back(unvec(y, liou.dim));
                   },
                   opts);

  BlockadeObservables obs = observables_from(times, states);
  if (snapshots) *snapshots = std::move(states);
  return obs;
}

DensityMatrix steady_state(const Liouvillian& liou) {
  if (!(liou.gamma > 0.0)) {
    fail(ErrorCode::no_unique_steady_state,
         "steady_state: gamma must be > 0 for a unique fixed point");
  }
  const int dim = liou.dim;
  const Eigen::Index n2 = liou.matrix.rows();

  // Stack the trace constraint under L and solve the least-squares system;
  // the QR rank reveals degeneracy beyond the trace freedom.
  Matrix sys(n2 + 1, n2);
  sys.topRows(n2) = liou.matrix;
  sys.row(n2).setZero();
  for (int i = 0; i < dim; ++i) sys(n2, i * dim + i) = 1.0;
  Vector rhs = Vector::Zero(n2 + 1);
  rhs(n2) = 1.0;

  Eigen::ColPivHouseholderQR<Matrix> qr(sys);
  if (qr.rank() < n2) {
    fail(ErrorCode::degenerate_steady_state,
         "steady_state: Liouvillian kernel dimension exceeds 1 (rank " +
             std::to_string(qr.rank()) + " of " + std::to_string(n2) + ")");
  }
  const Vector x = qr.solve(rhs);

  const double residual = (liou.matrix * x).norm();
  const double scale = liou.matrix.norm();
  if (!(residual <= 1e-10 * scale)) {
    fail(ErrorCode::degenerate_steady_state,
         "steady_state: residual " + std::to_string(residual) +
             " exceeds 1e-10 * ||L||");
  }
  return DensityMatrix(unvec(x, dim));
}

int default_fock_dim(double epsilon, double gamma, double nbar,
                     bool for_spectrum) {
  int dim = 10;
  if (gamma > 0.0) {
    dim = std::max(10, int(std::ceil(4.0 * (epsilon / gamma + 3.0 * nbar))));
  }
  if (for_spectrum) dim = std::max(dim, 12);
  return dim;
}

double tail_mass(const DensityMatrix& rho) {
  const int n = rho.dim();
  return rho.population(n - 1) + rho.population(n - 2);
}

}  // namespace phonsim
