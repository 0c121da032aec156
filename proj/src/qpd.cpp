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

#include "qpd.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace phonsim {

void PhaseSpaceGrid::validate() const {
  if (nx < 16 || ny < 16) {
    fail(ErrorCode::invalid_argument, "PhaseSpaceGrid: nx, ny must be >= 16");
  }
  if (!(x_min < x_max) || !(y_min < y_max) || !std::isfinite(x_min) ||
      !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max)) {
    fail(ErrorCode::invalid_argument, "PhaseSpaceGrid: invalid bounds");
  }
}

namespace {

void check_s(double s) {
  if (s == 1.0) {
    fail(ErrorCode::unsupported_distribution,
         "qpd: the P function (s = 1) is too singular to evaluate on a grid");
  }
  if (!(s >= -1.0 && s < 1.0)) {
    fail(ErrorCode::invalid_argument, "qpd: s must lie in [-1, 1)");
  }
}

// Workspace reused across grid points: Laguerre table and factorial logs.
struct QpdWorkspace {
  int dim;
  std::vector<double> lgamma_table;            // lgamma(n+1)
  std::vector<std::vector<double>> laguerre;   // [k][n] = L_n^(k)(x)

  explicit QpdWorkspace(int dim_) : dim(dim_), lgamma_table(dim_ + 1) {
    for (int n = 0; n <= dim_; ++n) lgamma_table[n] = std::lgamma(n + 1.0);
    laguerre.resize(dim_);
    for (int k = 0; k < dim_; ++k) laguerre[k].resize(dim_ - k, 0.0);
  }

  void fill_laguerre(double x) {
    for (int k = 0; k < dim; ++k) {
      auto& row = laguerre[k];
      const int count = dim - k;
      if (count >= 1) row[0] = 1.0;
      if (count >= 2) row[1] = 1.0 + k - x;
      for (int n = 2; n < count; ++n) {
        row[n] = ((2.0 * n - 1.0 + k - x) * row[n - 1] -
                  (n - 1.0 + k) * row[n - 2]) /
                 double(n);
      }
    }
  }
};

// <m|T^(s)(alpha)|n> for m >= n:
//   (2/(1-s)) e^{-2|a|^2/(1-s)} u^n (2a/(1-s))^{m-n} sqrt(n!/m!) L_n^{m-n}(x)
// with u = (s+1)/(s-1) and x = 4|a|^2/(1-s^2). Magnitudes are combined in
// log space so extreme prefactors cannot underflow the product.
Complex qpd_sum(const DensityMatrix& rho, Complex alpha, double s,
                QpdWorkspace& ws) {
  const int dim = rho.dim();
  const Matrix& r = rho.mat();

  if (s == -1.0) {
    // Husimi: T = |alpha><alpha|, W = <alpha|rho|alpha>/pi.
    const double a2 = std::norm(alpha);
    Vector coh(dim);
    double ln_fact = 0.0;
    for (int n = 0; n < dim; ++n) {
      if (n > 0) ln_fact += std::log(double(n));
      coh(n) = std::pow(alpha, n) * std::exp(-0.5 * a2 - 0.5 * ln_fact);
    }
    return (coh.adjoint() * (r * coh))(0, 0);
  }

  const double one_minus = 1.0 - s;
  const double u = (s + 1.0) / (s - 1.0);
  const double abs_u = std::abs(u);
  const double a2 = std::norm(alpha);
  const double ln_pref = std::log(2.0 / one_minus) - 2.0 * a2 / one_minus;

  Complex sum = 0.0;
  if (a2 == 0.0) {
    // Only the diagonal survives: T_nn = (2/(1-s)) u^n.
    double un = 1.0;
    for (int n = 0; n < dim; ++n) {
      sum += r(n, n) * (2.0 / one_minus) * un;
      un *= u;
    }
    return sum;
  }

  const double x = 4.0 * a2 / (one_minus * (1.0 + s));
  ws.fill_laguerre(x);
  const double ln_ratio = std::log(2.0 * std::abs(alpha) / one_minus);
  const Complex dir = alpha / std::abs(alpha);
  const double ln_abs_u = (abs_u > 0.0) ? std::log(abs_u) : 0.0;
  const double sign_u = (u < 0.0) ? -1.0 : 1.0;

  for (int n = 0; n < dim; ++n) {
    const double sign_un = (sign_u < 0.0 && (n % 2 == 1)) ? -1.0 : 1.0;
    for (int m = n; m < dim; ++m) {
      const int k = m - n;
      const double lag = ws.laguerre[k][n];
      if (lag == 0.0) continue;
      const double ln_mag = ln_pref + n * ln_abs_u + k * ln_ratio +
                            0.5 * (ws.lgamma_table[n] - ws.lgamma_table[m]) +
                            std::log(std::abs(lag));
      const double mag = std::exp(ln_mag);
      if (mag == 0.0) continue;
      const Complex t_mn =
          mag * sign_un * ((lag < 0.0) ? -1.0 : 1.0) * std::pow(dir, k);
      sum += r(n, m) * t_mn;
      if (m > n) sum += r(m, n) * std::conj(t_mn);
    }
  }
  return sum;
}

}  // namespace

double qpd_point(const DensityMatrix& rho, Complex alpha, double s) {
  check_s(s);
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    fail(ErrorCode::invalid_argument, "qpd_point: alpha must be finite");
  }
  QpdWorkspace ws(rho.dim());
  const Complex w = qpd_sum(rho, alpha, s, ws) / std::numbers::pi;
  if (std::abs(w.imag()) > 1e-9) {
    fail(ErrorCode::numerical_degeneracy,
         "qpd_point: imaginary residue " + std::to_string(w.imag()));
  }
  return w.real();
}

QpdMap qpd_grid(const DensityMatrix& rho, const PhaseSpaceGrid& grid,
                double s) {
  grid.validate();
  check_s(s);

  QpdMap map;
  map.grid = grid;
  map.s = s;
  map.values.resize(grid.nx, grid.ny);
  map.min_value = std::numeric_limits<double>::infinity();

  QpdWorkspace ws(rho.dim());
  const double cell = grid.dx() * grid.dy();
  double neg = 0.0;
  for (int iy = 0; iy < grid.ny; ++iy) {
    const double y = grid.y_at(iy);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Complex alpha(grid.x_at(ix), y);
      const Complex w = qpd_sum(rho, alpha, s, ws) / std::numbers::pi;
      if (std::abs(w.imag()) > 1e-9) {
        fail(ErrorCode::numerical_degeneracy,
             "qpd_grid: imaginary residue " + std::to_string(w.imag()));
      }
      const double v = w.real();
      map.values(ix, iy) = v;
      if (v < map.min_value) {
        map.min_value = v;
        map.argmin = alpha;
      }
      if (v < 0.0) neg += -v * cell;
    }
  }
  map.negative_volume = neg;
  return map;
}

double qpd_normalization(const QpdMap& map) {
  return map.values.sum() * map.grid.dx() * map.grid.dy();
}

NegativityWitness negativity_witness(const QpdMap& map) {
  constexpr double tol_neg = 1e-6;
  NegativityWitness w;
  w.min_value = map.min_value;
  w.argmin = map.argmin;
  w.negative_volume = map.negative_volume;
  w.is_negative = map.min_value < -tol_neg;
  return w;
}

}  // namespace phonsim
