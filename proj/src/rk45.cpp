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

#include "rk45.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace phonsim {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                 c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense-output coefficients (Hairer, Norsett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0,
                 d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0,
                 d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0,
                 d7 = 69997945.0 / 29380423.0;

double error_norm(const Vector& err, const Vector& y0, const Vector& y1,
                  double atol, double rtol) {
  const Eigen::Index n = err.size();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double sc =
        atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    const double r = std::abs(err(i)) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / double(n));
}

}  // namespace

void integrate_dopri5(const OdeRhs& rhs, const Vector& y0,
                      const std::vector<double>& sample_times,
                      const SampleSink& on_sample, const Dopri5Options& opts) {
  if (sample_times.empty()) return;
  for (std::size_t i = 1; i < sample_times.size(); ++i) {
    if (!(sample_times[i] > sample_times[i - 1])) {
      fail(ErrorCode::invalid_argument,
           "integrate_dopri5: sample times must be strictly increasing");
    }
  }

  double t = sample_times.front();
  const double t_end = sample_times.back();
  Vector y = y0;

  std::size_t next = 0;
  if (sample_times[next] == t) {
    on_sample(next, t, y);
    ++next;
  }
  if (next >= sample_times.size()) return;

  Vector k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()),
      k6(y.size()), k7(y.size()), ytmp(y.size()), y1(y.size()), err(y.size());
  rhs(t, y, k1);

  // Initial step from the first-derivative scale.
  const double f0 = k1.norm();
  double h = (f0 > 0.0) ? 0.01 * std::max(y.norm(), 1e-8) / f0 : 1e-6;
  h = std::min(h, t_end - t);
  if (opts.h_max > 0.0) h = std::min(h, opts.h_max);

  const double h_floor = 1e4 * std::numeric_limits<double>::epsilon();
  bool rejected = false;

  while (t < t_end) {
    h = std::min(h, t_end - t);
    if (h < h_floor * std::max(1.0, std::abs(t))) {
      fail(ErrorCode::stiffness,
           "integrate_dopri5: step size underflow at t = " + std::to_string(t));
    }

    ytmp = y + h * (a21 * k1);
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(t + h, ytmp, k6);
    y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    rhs(t + h, y1, k7);  // FSAL

    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, y1, opts.atol, opts.rtol);

    if (en <= 1.0) {
      // Serve dense-output samples inside (t, t+h].
      while (next < sample_times.size() && sample_times[next] <= t + h) {
        const double theta = (sample_times[next] - t) / h;
        const Vector ydiff = y1 - y;
        const Vector bspl = h * k1 - ydiff;
        const Vector r4 = ydiff - h * k7 - bspl;
        const Vector r5 =
            h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        const Vector ys =
            y + theta * (ydiff + (1.0 - theta) * (bspl + theta * (r4 + (1.0 - theta) * r5)));
        on_sample(next, sample_times[next], ys);
        ++next;
      }
      t += h;
      y.swap(y1);
      k1.swap(k7);
      double fac = opts.safety * std::pow(std::max(en, 1e-16), -0.2);
      fac = std::min(rejected ? 1.0 : 5.0, std::max(0.2, fac));
      h *= fac;
      if (opts.h_max > 0.0) h = std::min(h, opts.h_max);
      rejected = false;
      if (next >= sample_times.size()) return;
    } else {
      h *= std::max(0.2, opts.safety * std::pow(en, -0.2));
      rejected = true;
    }
  }
}

}  // namespace phonsim
