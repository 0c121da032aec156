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

#ifndef PHONSIM_MODEL_HPP
#define PHONSIM_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "fock.hpp"

namespace phonsim {

// Device-level parameters. hbar = 1; every frequency and rate is angular
// and temperature is k_B*T expressed in the same frequency units.
struct PhysicalParams {
  double e_c = 0.0;      // charging energy
  double n_x = 0.0;      // effective Cooper-pair number
  double x_0 = 0.0;      // zero-point amplitude
  double d = 1.0;        // qubit-resonator distance
  double b_field = 0.0;  // static magnetic field
  double i_0 = 0.0;      // probe current amplitude
  double length = 0.0;   // resonator length
  double omega = 1.0;    // resonator frequency
  double omega_0 = 2.0;  // qubit frequency
  double rabi = 0.0;     // qubit Rabi frequency
  double omega_2 = 1.0;  // probe frequency
  double temperature = 0.0;
  double gamma = 0.0;    // phonon decay rate

  void validate() const;
};

struct RegimeFlags {
  bool rwa_ok = false;
  bool dispersive_ok = false;
  bool dressed_ok = false;
  bool weak_drive_ok = false;
};

// Effective driven-Kerr parameters. epsilon stores the drive magnitude;
// the sign of the physical product -B*I_0*L*X_0 is kept separately since
// every observable depends on |epsilon| only.
struct ReducedParams {
  double kappa = 0.0;
  double epsilon = 0.0;
  double gamma = 0.0;
  double nbar = 0.0;
  double omega_bar = 0.0;
  double delta = 0.0;
  double g = 0.0;
  double probe_detuning = 0.0;  // omega_2 - omega_bar
  int epsilon_sign = 1;
  RegimeFlags flags;

  double signed_epsilon() const { return epsilon_sign * epsilon; }
};

// Regime thresholds; the flags record where the effective model is trusted.
RegimeFlags classify_regime(double g, double delta, double rabi, double epsilon,
                            double kappa);

// nbar = 1/(exp(omega/T) - 1), zero at T = 0.
double thermal_occupation(double omega, double temperature);

ReducedParams map_physical_params(const PhysicalParams& p);

enum class KerrFrame { resonant_rotating, lab_effective };

// H(t) = static + sum_k (op_k e^{-i f_k t} + op_k^dag e^{+i conj(f_k) t}).
struct DriveTerm {
  Operator op;
  Complex frequency;
};

struct HamiltonianSpec {
  Operator static_part;
  std::vector<DriveTerm> drive_terms;
  std::vector<std::string> warnings;

  Matrix at(double t) const;
};

/// resonant_rotating: kappa n(n-1) + eps (a^dag + a), valid at probe
/// resonance (probe_detuning == 0). lab_effective: omega_bar n +
/// kappa n(n-1) static part plus the eps drive at the probe frequency.
HamiltonianSpec build_kerr_hamiltonian(const ReducedParams& r, int dim,
                                       KerrFrame frame);

/// Full qubit (x) resonator model in the frame rotating at omega_0 for both
/// subsystems: -Delta n + g(sigma+ a + sigma- a^dag) + Rabi sigma_x, with an
/// optional probe drive. Regime violations are recorded as warnings.
HamiltonianSpec build_full_model(const PhysicalParams& p, int dim,
                                 bool include_probe = false);

}  // namespace phonsim

#endif
