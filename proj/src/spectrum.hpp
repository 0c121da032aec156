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

#ifndef PHONSIM_SPECTRUM_HPP
#define PHONSIM_SPECTRUM_HPP

#include <vector>

#include "lindblad.hpp"

namespace phonsim {

struct CorrelationSeries {
  std::vector<double> taus;      // uniform, from 0
  std::vector<Complex> values;   // C(tau) = <V(0)V(tau)>_ss
};

struct SpectrumSeries {
  std::vector<double> omegas;  // both signs, ascending
  std::vector<double> values;
};

struct Peak {
  double frequency = 0.0;
  double height = 0.0;
  double width = 0.0;   // width at half maximum; NaN when not derivable
  bool appears = true;  // false for centers suppressed at real drive
};

struct PeakSet {
  std::vector<Peak> peaks;  // sorted by frequency
};

/// Electromotive-force operator i(a^dag - a); the magnetomotive prefactor is
/// normalized to 1 so spectra are in arbitrary units.
Operator emf_operator(int dim);

/// 2^14 lags, tau_max = max(28/gamma, 4 pi/epsilon); long enough that the
/// slowest coherence (rate gamma(1+2 nbar)/2) decays below 1e-6.
std::vector<double> default_lag_grid(double gamma, double epsilon);

/// Regression contract: C(tau) = Tr[V e^{L tau}(rho_ss V)], realized by a
/// precomputed one-lag propagator e^{L d tau} applied sequentially.
/// Verifies C(0) = Tr[V^2 rho_ss] to 1e-8 internally.
CorrelationSeries two_time_correlation(const DensityMatrix& rho_ss,
                                       const Liouvillian& liou,
                                       const Operator& v,
                                       const std::vector<double>& taus);

/// S_V(w') = 2 Re int_0^inf C(tau) e^{-i w' tau} d tau via a discrete
/// transform of the Hermitian-extended series; both frequency signs emitted.
SpectrumSeries power_spectrum(const CorrelationSeries& c);

enum class PeakModel { two_level, three_level };

/// two_level: {0 (absent for real drive), +/- sqrt((8e)^2 - g^2(1+2n)^2)/4}.
/// three_level: {0, +/-2e(1-d), +/-[2k(1+6d) +/- e(1-d)]}, d = e^2/(8k^2).
/// Centers only; heights and widths are left unset.
PeakSet predicted_peaks(double epsilon, double kappa, double gamma, double nbar,
                        PeakModel level);

/// Local maxima above the prominence threshold with quadratic sub-bin
/// refinement of the center.
PeakSet find_peaks(const SpectrumSeries& s, double min_prominence);

}  // namespace phonsim

#endif
