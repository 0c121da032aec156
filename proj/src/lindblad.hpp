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

#ifndef PHONSIM_LINDBLAD_HPP
#define PHONSIM_LINDBLAD_HPP

#include <vector>

#include "model.hpp"
#include "rk45.hpp"

namespace phonsim {

// Superoperator acting on column-stacked density matrices.
struct Liouvillian {
  int dim = 0;
  Matrix matrix;  // N^2 x N^2
  std::vector<Operator> collapse_ops;
  double gamma = 0.0;
  double nbar = 0.0;
};

/// -i[H,rho] + (gamma/2) nbar (2 a^dag rho a - a a^dag rho - rho a a^dag)
///          + (gamma/2)(nbar+1)(2 a rho a^dag - a^dag a rho - rho a^dag a).
/// Collapse operators: sqrt(gamma(nbar+1)) a and sqrt(gamma nbar) a^dag.
Liouvillian build_liouvillian(const Operator& h_static, double gamma,
                              double nbar);

/// -i (I x op - op^T x I) on column-stacked matrices.
Matrix commutator_superop(const Operator& op);

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, int dim);

struct BlockadeObservables {
  std::vector<double> times;
  std::vector<std::vector<double>> populations;  // [time][n]
  std::vector<double> fidelity;                  // P0 + P1
  std::vector<double> coherence_re;              // Re<0|rho|1>
  std::vector<double> coherence_im;              // Im<0|rho|1>
};

/// Adaptive integration of the master equation; every sample is validated
/// against the DensityMatrix invariants. Optional time-dependent drive terms
/// are added to the static Liouvillian as -i[drive(t), rho].
BlockadeObservables evolve(const DensityMatrix& rho0, const Liouvillian& liou,
                           const std::vector<DriveTerm>& drive_terms,
                           const std::vector<double>& times,
                           std::vector<DensityMatrix>* snapshots = nullptr,
                           const Dopri5Options& opts = {});

/// Direct solve of L(rho) = 0 with the trace constraint appended; requires
/// gamma > 0 for a unique fixed point.
DensityMatrix steady_state(const Liouvillian& liou);

/// Truncation policy: max(10, ceil(4 (eps/gamma + 3 nbar))), at least 12 for
/// spectrum work; callers validate post hoc with tail_mass.
int default_fock_dim(double epsilon, double gamma, double nbar,
                     bool for_spectrum = false);

/// P[N-1] + P[N-2]; small values confirm the truncation choice.
double tail_mass(const DensityMatrix& rho);

BlockadeObservables observables_from(const std::vector<double>& times,
                                     const std::vector<DensityMatrix>& states);

}  // namespace phonsim

#endif
