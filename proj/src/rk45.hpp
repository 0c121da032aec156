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

#ifndef PHONSIM_RK45_HPP
#define PHONSIM_RK45_HPP

#include <functional>
#include <vector>

#include "fock.hpp"

namespace phonsim {

struct Dopri5Options {
  double rtol = 1e-9;
  double atol = 1e-12;
  double h_max = 0.0;  // 0 = unbounded
  double safety = 0.9;
};

using OdeRhs = std::function<void(double t, const Vector& y, Vector& dy)>;
using SampleSink = std::function<void(std::size_t index, double t, const Vector& y)>;

/// Dormand-Prince 5(4) with 4th-order dense output. Integrates from
/// sample_times.front() to sample_times.back() and invokes on_sample at
/// every requested time (strictly increasing). Throws a stiffness error
/// carrying the failing time when the step size underflows.
void integrate_dopri5(const OdeRhs& rhs, const Vector& y0,
                      const std::vector<double>& sample_times,
                      const SampleSink& on_sample,
                      const Dopri5Options& opts = {});

}  // namespace phonsim

#endif
