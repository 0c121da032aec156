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

#include "mcwf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "rng.hpp"

namespace phonsim {

namespace {

class TrajectoryIntegrator {
 public:
  TrajectoryIntegrator(const HamiltonianSpec& h,
                       const std::vector<Operator>& collapse, double max_step,
                       double norm_tol, std::uint64_t seed)
      : drive_(h.drive_terms), norm_tol_(norm_tol), rng_(seed) {
    const int dim = h.static_part.dim();
    h_nh_ = h.static_part.mat();
    for (const auto& c : collapse) {
      if (c.dim() != dim) {
        fail(ErrorCode::dimension_mismatch, "run_trajectory: collapse dimension");
      }
      cs_.push_back(c.mat());
      h_nh_ -= 0.5 * kI * (c.mat().adjoint() * c.mat());
    }
    double bound = h_nh_.cwiseAbs().rowwise().sum().maxCoeff();
    for (const auto& d : drive_) {
      bound += 2.0 * d.op.mat().cwiseAbs().rowwise().sum().maxCoeff();
    }
    step_ = (max_step > 0.0) ? max_step : (bound > 0.0 ? 0.5 / bound : 1e-2);
    threshold_ = rng_.next_uniform();
  }

  void advance(double t0, double t1, Vector& psi,
               std::vector<Trajectory::Jump>& jumps) {
    const int nsub = std::max(1, int(std::ceil((t1 - t0) / step_)));
    const double h = (t1 - t0) / nsub;
    double t = t0;
    for (int i = 0; i < nsub; ++i) {
      double t_next = (i + 1 == nsub) ? t1 : t0 + (i + 1) * h;
      // A jump inside the substep re-enters with the remaining width.
      while (true) {
        Vector trial = rk4_step(psi, t, t_next - t);
        if (trial.squaredNorm() >= threshold_) {
          psi.swap(trial);
          t = t_next;
          break;
        }
        const double t_jump = refine_jump_time(psi, t, t_next, trial);
        apply_jump(psi, t_jump, jumps);
        t = t_jump;
      }
    }
  }

 private:
  Vector rk4_step(const Vector& y, double t, double h) const {
    Vector k1 = rhs(t, y);
    Vector k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
    Vector k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
    Vector k4 = rhs(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Vector rhs(double t, const Vector& y) const {
    Vector dy = -kI * (h_nh_ * y);
    for (const auto& d : drive_) {
      const Complex ph = std::exp(-kI * d.frequency * t);
      dy -= kI * (ph * (d.op.mat() * y) +
                  std::conj(ph) * (d.op.mat().adjoint() * y));
    }
    return dy;
  }

  // Bisection on the squared-norm crossing; psi enters as the state at t_lo
  // and leaves as the (unnormalized) state at the returned jump time.
  double refine_jump_time(Vector& psi, double t_lo, double t_hi,
                          const Vector& psi_hi) {
    Vector lo = psi;
    Vector best = psi_hi;
    double t_best = t_hi;
    for (int iter = 0; iter < 200; ++iter) {
      if (std::abs(best.squaredNorm() - threshold_) <= norm_tol_ ||
          t_hi - t_lo <= 1e-15 * std::max(1.0, std::abs(t_hi))) {
        break;
      }
      const double mid = 0.5 * (t_lo + t_hi);
      Vector trial = rk4_step(lo, t_lo, mid - t_lo);
      if (trial.squaredNorm() >= threshold_) {
        t_lo = mid;
        lo.swap(trial);
        // crossing is in (mid, t_hi]; keep previous best
      } else {
        t_hi = mid;
        best = trial;
        t_best = mid;
      }
    }
    psi.swap(best);
    return t_best;
  }

  void apply_jump(Vector& psi, double t, std::vector<Trajectory::Jump>& jumps) {
    double total = 0.0;
    std::vector<double> w(cs_.size());
    std::vector<Vector> jumped(cs_.size());
    for (std::size_t k = 0; k < cs_.size(); ++k) {
      jumped[k] = cs_[k] * psi;
      w[k] = jumped[k].squaredNorm();
      total += w[k];
    }
    if (!(total > 0.0)) {
      fail(ErrorCode::numerical_degeneracy,
           "run_trajectory: zero-norm collapse application at t = " +
               std::to_string(t));
    }
    const double u = rng_.next_uniform() * total;
    double acc = 0.0;
    std::size_t pick = cs_.size() - 1;
    for (std::size_t k = 0; k < cs_.size(); ++k) {
      acc += w[k];
      if (u <= acc) {
        pick = k;
        break;
      }
    }
    if (!(w[pick] > 0.0)) {
      fail(ErrorCode::numerical_degeneracy,
           "run_trajectory: selected collapse channel annihilates the state");
    }
    psi = jumped[pick] / std::sqrt(w[pick]);
    jumps.push_back({t, int(pick) + 1});
    threshold_ = rng_.next_uniform();
  }

  Matrix h_nh_;
  std::vector<Matrix> cs_;
  std::vector<DriveTerm> drive_;
  double step_;
  double norm_tol_;
  double threshold_;
  CounterRng rng_;
};

}  // namespace

Trajectory run_trajectory(const Ket& psi0, const HamiltonianSpec& h,
                          const std::vector<Operator>& collapse,
                          const std::vector<double>& times, std::uint64_t seed,
                          const McwfOptions& opts) {
  if (psi0.dim() != h.static_part.dim()) {
    fail(ErrorCode::dimension_mismatch, "run_trajectory: state dimension");
  }
  if (times.empty() || times.front() != 0.0) {
    fail(ErrorCode::invalid_argument, "run_trajectory: times must start at 0");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-8) {
    fail(ErrorCode::invalid_argument, "run_trajectory: psi0 must be normalized");
  }

  TrajectoryIntegrator integ(h, collapse, opts.max_step, opts.norm_tol, seed);

  Trajectory traj;
  traj.seed = seed;
  traj.times = times;
  traj.states.reserve(times.size());

  Vector psi = psi0.vec();
  traj.states.push_back(Ket::normalized(psi));
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      fail(ErrorCode::invalid_argument,
           "run_trajectory: times must be strictly increasing");
    }
    integ.advance(times[i - 1], times[i], psi, traj.jumps);
    traj.states.push_back(Ket::normalized(psi));
  }
  return traj;
}

EnsembleEstimate ensemble_average(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty()) {
    fail(ErrorCode::invalid_argument, "ensemble_average: no trajectories");
  }
  const auto& grid = trajectories.front().times;
  const int dim = trajectories.front().states.front().dim();
  for (const auto& t : trajectories) {
    if (t.times != grid || t.states.front().dim() != dim) {
      fail(ErrorCode::aggregation_mismatch,
           "ensemble_average: trajectories disagree on time grid or dimension");
    }
  }

  std::vector<const Trajectory*> ordered;
  ordered.reserve(trajectories.size());
  for (const auto& t : trajectories) ordered.push_back(&t);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Trajectory* a, const Trajectory* b) {
                     return a->seed < b->seed;
                   });

  const std::size_t nt = grid.size();
  const std::size_t m = ordered.size();
  EnsembleEstimate est;
  est.times = grid;
  est.n_traj = int(m);
  est.p_mean.assign(nt, std::vector<double>(dim, 0.0));
  est.p_stderr.assign(nt, std::vector<double>(dim, 0.0));

  std::vector<std::vector<double>> sum(nt, std::vector<double>(dim, 0.0));
  std::vector<std::vector<double>> sum_sq(nt, std::vector<double>(dim, 0.0));
  for (const Trajectory* traj : ordered) {
    for (std::size_t it = 0; it < nt; ++it) {
      const Vector& v = traj->states[it].vec();
      for (int n = 0; n < dim; ++n) {
        const double p = std::norm(v(n));
        sum[it][n] += p;
        sum_sq[it][n] += p * p;
      }
    }
  }
  for (std::size_t it = 0; it < nt; ++it) {
    for (int n = 0; n < dim; ++n) {
      const double mean = sum[it][n] / double(m);
      est.p_mean[it][n] = mean;
      if (m == 1) {
        est.p_stderr[it][n] = std::numeric_limits<double>::quiet_NaN();
      } else {
        const double var =
            std::max(0.0, (sum_sq[it][n] - double(m) * mean * mean) /
                              double(m - 1));
        est.p_stderr[it][n] = std::sqrt(var / double(m));
      }
    }
  }
  return est;
}

std::vector<Trajectory> run_ensemble(const Ket& psi0, const HamiltonianSpec& h,
                                     const std::vector<Operator>& collapse,
                                     const std::vector<double>& times,
                                     std::uint64_t master_seed, int n_traj,
                                     int threads, const McwfOptions& opts) {
  if (n_traj < 1) fail(ErrorCode::invalid_argument, "run_ensemble: n_traj < 1");
  if (threads < 1) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min(threads, n_traj);

  std::vector<Trajectory> out(n_traj);
  std::atomic<int> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&]() {
    while (true) {
      const int i = cursor.fetch_add(1);
      if (i >= n_traj) return;
      try {
        const std::uint64_t seed = CounterRng::derive_key(master_seed, i);
        out[i] = run_trajectory(psi0, h, collapse, times, seed, opts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace phonsim
