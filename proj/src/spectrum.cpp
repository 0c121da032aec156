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

#include "spectrum.hpp"

#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace phonsim {

Operator emf_operator(int dim) {
  if (dim < 2) fail(ErrorCode::invalid_dimension, "emf_operator: dim must be >= 2");
  const Matrix a = annihilation_op(dim).mat();
  return Operator(kI * (a.adjoint() - a));
}

std::vector<double> default_lag_grid(double gamma, double epsilon) {
  if (!(gamma > 0.0)) {
    fail(ErrorCode::invalid_argument, "default_lag_grid: gamma must be > 0");
  }
  double tau_max = 28.0 / gamma;
  if (epsilon > 0.0) tau_max = std::max(tau_max, 4.0 * std::numbers::pi / epsilon);
  constexpr int n = 1 << 14;
  std::vector<double> taus(n);
  const double dt = tau_max / double(n - 1);
  for (int i = 0; i < n; ++i) taus[i] = i * dt;
  return taus;
}

CorrelationSeries two_time_correlation(const DensityMatrix& rho_ss,
                                       const Liouvillian& liou,
                                       const Operator& v,
                                       const std::vector<double>& taus) {
  const int dim = liou.dim;
  if (rho_ss.dim() != dim || v.dim() != dim) {
    fail(ErrorCode::dimension_mismatch, "two_time_correlation: dimensions");
  }
  if (taus.size() < 2 || taus.front() != 0.0) {
    fail(ErrorCode::invalid_argument,
         "two_time_correlation: lags must start at 0");
  }
  const double dt = taus[1] - taus[0];
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (std::abs(taus[i] - double(i) * dt) > 1e-9 * taus.back()) {
      fail(ErrorCode::invalid_argument,
           "two_time_correlation: lags must be uniform");
    }
  }

  // The state handed in must actually be stationary under this Liouvillian.
  const Vector rho_vec = vec(rho_ss.mat());
  const double resid = (liou.matrix * rho_vec).norm();
  if (!(resid <= 1e-8 * liou.matrix.norm())) {
    fail(ErrorCode::stale_steady_state,
         "two_time_correlation: rho_ss residual " + std::to_string(resid));
  }

  Vector b = vec(Matrix(rho_ss.mat() * v.mat()));
  const Vector weights = vec(Matrix(v.mat().transpose()));

  const Matrix propagator = Matrix(liou.matrix * dt).exp();

  // The one-lag propagator is banded in practice (weak drive, slow
  // dissipation); dropping entries below 1e-15 of the peak keeps the
  // accumulated error around 1e-10 while making the stepping much cheaper.
  const double drop = 1e-15 * propagator.cwiseAbs().maxCoeff();
  Eigen::SparseMatrix<Complex> sparse_prop(propagator.rows(), propagator.cols());
  std::size_t nnz = 0;
  {
    std::vector<Eigen::Triplet<Complex>> trip;
    for (Eigen::Index j = 0; j < propagator.cols(); ++j) {
      for (Eigen::Index i = 0; i < propagator.rows(); ++i) {
        if (std::abs(propagator(i, j)) > drop) {
          trip.emplace_back(i, j, propagator(i, j));
          ++nnz;
        }
      }
    }
    sparse_prop.setFromTriplets(trip.begin(), trip.end());
  }
  const bool use_sparse =
      nnz < std::size_t(propagator.size()) / 4;

  CorrelationSeries series;
  series.taus = taus;
  series.values.reserve(taus.size());
  Vector next(b.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    series.values.push_back((weights.transpose() * b)(0, 0));
    if (i + 1 < taus.size()) {
      if (use_sparse) {
        next.noalias() = sparse_prop * b;
      } else {
        next.noalias() = propagator * b;
      }
      b.swap(next);
    }
  }

  const Complex c0_direct = (v.mat() * v.mat() * rho_ss.mat()).trace();
  if (std::abs(series.values.front() - c0_direct) >
      1e-8 * std::max(1.0, std::abs(c0_direct))) {
    fail(ErrorCode::numerical_degeneracy,
         "two_time_correlation: C(0) disagrees with Tr[V^2 rho_ss]");
  }
  if (series.values.front().real() < -1e-10) {
    fail(ErrorCode::numerical_degeneracy,
         "two_time_correlation: C(0) must be nonnegative");
  }
  return series;
}

SpectrumSeries power_spectrum(const CorrelationSeries& c) {
  const std::size_t m = c.values.size();
  if (m < 16) {
    fail(ErrorCode::invalid_argument, "power_spectrum: series too short");
  }
  const double c0 = std::abs(c.values.front());
  if (!(std::abs(c.values.back()) < 1e-6 * c0)) {
    fail(ErrorCode::truncated_correlation,
         "power_spectrum: |C(tau_max)| = " +
             std::to_string(std::abs(c.values.back())) +
             " has not decayed below 1e-6 |C(0)|");
  }
  const double dt = c.taus[1] - c.taus[0];

  // Hermitian extension C(-tau) = conj(C(tau)) on a ring of length 2m.
  std::vector<Complex> ext(2 * m, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < m; ++j) ext[j] = c.values[j];
  for (std::size_t j = 1; j < m; ++j) ext[2 * m - j] = std::conj(c.values[j]);

  Eigen::FFT<double> fft;
  std::vector<Complex> out;
  fft.fwd(out, ext);

  SpectrumSeries spec;
  const std::size_t n = out.size();
  spec.omegas.resize(n);
  spec.values.resize(n);
  const double dw = 2.0 * std::numbers::pi / (double(n) * dt);
  double max_abs = 0.0, max_imag = 0.0;
  // fftshift so the axis is ascending through zero.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = (k + n / 2) % n;
    const double freq_index =
        (src < n / 2) ? double(src) : double(src) - double(n);
    spec.omegas[k] = freq_index * dw;
    spec.values[k] = dt * out[src].real();
    max_abs = std::max(max_abs, std::abs(spec.values[k]));
    max_imag = std::max(max_imag, std::abs(out[src].imag()) * dt);
  }
  if (max_imag > 1e-8 * std::max(1.0, max_abs)) {
    fail(ErrorCode::numerical_degeneracy,
         "power_spectrum: imaginary residue after symmetric extension");
  }
  for (double v : spec.values) {
    if (v < -1e-6 * max_abs) {
      fail(ErrorCode::numerical_degeneracy,
           "power_spectrum: spectrum negative beyond tolerance");
    }
  }
  return spec;
}

PeakSet predicted_peaks(double epsilon, double kappa, double gamma, double nbar,
                        PeakModel level) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  PeakSet set;
  if (level == PeakModel::two_level) {
    const double radicand = std::pow(8.0 * epsilon, 2) -
                            std::pow(gamma * (1.0 + 2.0 * nbar), 2);
    if (!(radicand > 0.0)) {
      fail(ErrorCode::overdamped_regime,
           "predicted_peaks: (8 eps)^2 <= gamma^2 (1+2 nbar)^2, no underdamped "
           "peaks");
    }
    const double w1 = 0.25 * std::sqrt(radicand);
    set.peaks.push_back({-w1, nan, nan, true});
    set.peaks.push_back({0.0, nan, nan, false});  // absent for real drive
    set.peaks.push_back({+w1, nan, nan, true});
    return set;
  }

  const double delta = epsilon * epsilon / (8.0 * kappa * kappa);
  const double f1 = 2.0 * epsilon * (1.0 - delta);
  const double hi = 2.0 * kappa * (1.0 + 6.0 * delta) + epsilon * (1.0 - delta);
  const double lo = 2.0 * kappa * (1.0 + 6.0 * delta) - epsilon * (1.0 - delta);
  for (double f : {-hi, -lo, -f1, 0.0, f1, lo, hi}) {
    set.peaks.push_back({f, nan, nan, true});
  }
  std::sort(set.peaks.begin(), set.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.frequency < b.frequency; });
  return set;
}

PeakSet find_peaks(const SpectrumSeries& s, double min_prominence) {
  PeakSet set;
  const std::size_t n = s.values.size();
  if (n < 3) return set;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = s.values[i];
    if (!(v > s.values[i - 1]) || !(v >= s.values[i + 1])) continue;

    // Prominence: drop to the highest valley before re-reaching this level.
    double left_min = v;
    for (std::size_t j = i; j-- > 0;) {
      if (s.values[j] > v) break;
      left_min = std::min(left_min, s.values[j]);
    }
    double right_min = v;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s.values[j] > v) break;
      right_min = std::min(right_min, s.values[j]);
    }
    const double prominence = v - std::max(left_min, right_min);
    if (prominence < min_prominence) continue;

    // Quadratic sub-bin refinement.
    const double ym = s.values[i - 1], y0 = v, yp = s.values[i + 1];
    const double denom = ym - 2.0 * y0 + yp;
    double shift = 0.0;
    if (denom < 0.0) shift = 0.5 * (ym - yp) / denom;
    shift = std::clamp(shift, -0.5, 0.5);
    const double dw = s.omegas[1] - s.omegas[0];
    const double freq = s.omegas[i] + shift * dw;
    const double height = y0 - 0.25 * (ym - yp) * shift;

    // Width at half maximum by linear interpolation of the crossings.
    const double half = 0.5 * height;
    double wl = s.omegas.front(), wr = s.omegas.back();
    bool found_l = false, found_r = false;
    for (std::size_t j = i; j-- > 0;) {
      if (s.values[j] > v) break;
      if (s.values[j] <= half) {
        const double f = (half - s.values[j]) / (s.values[j + 1] - s.values[j]);
        wl = s.omegas[j] + f * dw;
        found_l = true;
        break;
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s.values[j] > v) break;
      if (s.values[j] <= half) {
        const double f = (s.values[j - 1] - half) / (s.values[j - 1] - s.values[j]);
        wr = s.omegas[j - 1] + f * dw;
        found_r = true;
        break;
      }
    }
    const double width = (found_l && found_r)
                             ? wr - wl
                             : std::numeric_limits<double>::quiet_NaN();
    set.peaks.push_back({freq, height, width, true});
  }
  return set;
}

}  // namespace phonsim
