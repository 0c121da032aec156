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

#ifndef PHONSIM_MCWF_HPP
#define PHONSIM_MCWF_HPP

#include <cstdint>
#include <vector>

#include "lindblad.hpp"

namespace phonsim {

struct Trajectory {
  struct Jump {
    double time;
    int channel;  // 1 = phonon loss, 2 = thermal excitation
  };
  std::uint64_t seed;
  std::vector<double> times;
  std::vector<Ket> states;  // normalized samples
  std::vector<Jump> jumps;
};

struct McwfOptions {
  double max_step = 0.0;    // 0 = derived from ||H_nh||
  double norm_tol = 1e-8;   // bisection tolerance on the squared norm
};

/// First-order jump unraveling: drift under H - (i/2) sum C_k^dag C_k, jump
/// when the squared norm crosses a uniform draw (bisection-refined), channel
/// chosen proportionally to <C_k^dag C_k>. Bit-for-bit reproducible for a
/// given (seed, step size).
Trajectory run_trajectory(const Ket& psi0, const HamiltonianSpec& h,
                          const std::vector<Operator>& collapse,
                          const std::vector<double>& times, std::uint64_t seed,
                          const McwfOptions& opts = {});

struct EnsembleEstimate {
  std::vector<double> times;
  std::vector<std::vector<double>> p_mean;    // [time][n]
  std::vector<std::vector<double>> p_stderr;  // NaN sentinel for n_traj == 1
  int n_traj = 0;
};

/// Per-time mean of |<n|psi>|^2 with its standard error. Trajectories are
/// summed in seed order so the reduction is independent of how they were
/// produced.
EnsembleEstimate ensemble_average(const std::vector<Trajectory>& trajectories);

/// Runs n_traj trajectories with per-trajectory seeds derived from
/// (master_seed, index); identical results for any thread count.
std::vector<Trajectory> run_ensemble(const Ket& psi0, const HamiltonianSpec& h,
                                     const std::vector<Operator>& collapse,
                                     const std::vector<double>& times,
                                     std::uint64_t master_seed, int n_traj,
                                     int threads,
                                     const McwfOptions& opts = {});

}  // namespace phonsim

#endif
