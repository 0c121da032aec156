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

#include "model.hpp"

#include <cmath>

namespace phonsim {

void PhysicalParams::validate() const {
  if (!(omega > 0.0)) fail(ErrorCode::invalid_argument, "omega must be > 0");
  if (!(omega_0 > 0.0)) fail(ErrorCode::invalid_argument, "omega_0 must be > 0");
  if (!(rabi > 0.0)) fail(ErrorCode::invalid_argument, "Rabi frequency must be > 0");
  if (gamma < 0.0) fail(ErrorCode::invalid_argument, "gamma must be >= 0");
  if (temperature < 0.0) fail(ErrorCode::invalid_argument, "temperature must be >= 0");
  if (d == 0.0) fail(ErrorCode::invalid_argument, "qubit-resonator distance must be nonzero");
}

RegimeFlags classify_regime(double g, double delta, double rabi,
                            double epsilon, double kappa) {
  RegimeFlags f;
  const double ag = std::abs(g);
  const double ad = std::abs(delta);
  if (ag > 0.0) {
    const double ratio = ad / ag;
    f.rwa_ok = ratio >= 3.0 && ratio <= 20.0;
    f.dispersive_ok = ratio >= 3.0;
  }
  if (ad > 0.0 && ag > 0.0) {
    f.dressed_ok = rabi >= 10.0 * ag * ag / ad;
  }
  f.weak_drive_ok = kappa > 0.0 && epsilon <= kappa / 10.0;
  return f;
}

double thermal_occupation(double omega, double temperature) {
  if (temperature < 0.0) fail(ErrorCode::invalid_argument, "temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

ReducedParams map_physical_params(const PhysicalParams& p) {
  if (p.rabi == 0.0) {
    fail(ErrorCode::degenerate_drive, "map_physical_params: Rabi frequency is zero");
  }
  p.validate();
  const double delta = p.omega_0 - p.omega;
  if (delta == 0.0) {
    fail(ErrorCode::dispersive_singularity,
         "map_physical_params: qubit-resonator detuning is zero");
  }

  ReducedParams r;
  r.delta = delta;
  r.g = 4.0 * p.e_c * p.n_x * p.x_0 / p.d;
  const double eps_signed = -p.b_field * p.i_0 * p.length * p.x_0;
  r.epsilon = std::abs(eps_signed);
  r.epsilon_sign = (eps_signed < 0.0) ? -1 : 1;
  r.kappa = std::pow(r.g, 4) / (p.rabi * delta * delta);
  r.nbar = thermal_occupation(p.omega, p.temperature);
  r.omega_bar = p.omega + r.kappa - r.g * r.g / delta;
  r.probe_detuning = p.omega_2 - r.omega_bar;
  r.gamma = p.gamma;
  r.flags = classify_regime(r.g, delta, p.rabi, r.epsilon, r.kappa);
  return r;
}

Matrix HamiltonianSpec::at(double t) const {
  Matrix h = static_part.mat();
  for (const auto& d : drive_terms) {
    const Complex ph = std::exp(-kI * d.frequency * t);
    h += ph * d.op.mat() + std::conj(ph) * d.op.mat().adjoint();
  }
  return h;
}

namespace {

Matrix kerr_term(double kappa, int dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = kappa * double(n) * double(n - 1);
  return m;
}

}  // namespace

HamiltonianSpec build_kerr_hamiltonian(const ReducedParams& r, int dim,
                                       KerrFrame frame) {
  if (dim < 4) {
    fail(ErrorCode::invalid_dimension,
         "build_kerr_hamiltonian: dim must be >= 4 to resolve the two-phonon level");
  }
  const double eps = r.signed_epsilon();
  const Matrix a = annihilation_op(dim).mat();

  if (frame == KerrFrame::resonant_rotating) {
    const double scale = std::max({1.0, std::abs(r.omega_bar), r.kappa});
    if (std::abs(r.probe_detuning) > 1e-12 * scale) {
      fail(ErrorCode::frame_mismatch,
           "build_kerr_hamiltonian: resonant_rotating frame requires the probe "
           "at the renormalized frequency (probe_detuning = " +
               std::to_string(r.probe_detuning) + ")");
    }
    Matrix h = kerr_term(r.kappa, dim);
    h += eps * (a.adjoint() + a);
    return HamiltonianSpec{Operator(std::move(h)), {}, {}};
  }

  // lab_effective: omega_bar n + kappa n(n-1), drive at the probe frequency.
  Matrix h = kerr_term(r.kappa, dim);
  for (int n = 0; n < dim; ++n) h(n, n) += r.omega_bar * double(n);
  std::vector<DriveTerm> drives;
  drives.push_back({Operator(Matrix(eps * a.adjoint())),
                    Complex(r.omega_bar + r.probe_detuning, 0.0)});
  return HamiltonianSpec{Operator(std::move(h)), std::move(drives), {}};
}

HamiltonianSpec build_full_model(const PhysicalParams& p, int dim,
                                 bool include_probe) {
  if (dim < 4) {
    fail(ErrorCode::invalid_dimension, "build_full_model: dim must be >= 4");
  }
  const ReducedParams r = map_physical_params(p);

  const Operator id2 = identity_op(2);
  const Operator idn = identity_op(dim);
  const Operator a = annihilation_op(dim);
  const Operator num = number_op(dim);

  Matrix h = -r.delta * tensor(id2, num).mat();
  h += r.g * (tensor(sigma_plus(), a).mat() +
              tensor(sigma_minus(), a.adjoint()).mat());
  h += p.rabi * tensor(sigma_x(), idn).mat();

  HamiltonianSpec spec{Operator(std::move(h)), {}, {}};
  if (!r.flags.rwa_ok) {
    spec.warnings.push_back("rotating-wave approximation outside trusted range "
                            "(need 3 <= |delta|/g <= 20)");
  }
  if (!r.flags.dispersive_ok) {
    spec.warnings.push_back("dispersive condition |delta|/g >= 3 not met");
  }
  if (include_probe && r.epsilon > 0.0) {
    const Matrix drive = r.signed_epsilon() * tensor(id2, a.adjoint()).mat();
    spec.drive_terms.push_back(
        {Operator(drive), Complex(p.omega_2 - p.omega_0, 0.0)});
  }
  return spec;
}

}  // namespace phonsim
