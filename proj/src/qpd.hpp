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

#ifndef PHONSIM_QPD_HPP
#define PHONSIM_QPD_HPP

#include "fock.hpp"

namespace phonsim {

struct PhaseSpaceGrid {
  double x_min = -4.0, x_max = 4.0;
  double y_min = -4.0, y_max = 4.0;
  int nx = 201, ny = 201;

  void validate() const;
  double dx() const { return (x_max - x_min) / double(nx - 1); }
  double dy() const { return (y_max - y_min) / double(ny - 1); }
  double x_at(int ix) const { return x_min + ix * dx(); }
  double y_at(int iy) const { return y_min + iy * dy(); }
};

struct QpdMap {
  PhaseSpaceGrid grid;
  double s = 0.0;
  Eigen::MatrixXd values;  // values(ix, iy)
  double min_value = 0.0;
  Complex argmin{0.0, 0.0};
  double negative_volume = 0.0;
};

/// W^(s)(alpha) = (1/pi) Tr[rho T^(s)(alpha)] from the closed-form
/// associated-Laguerre matrix elements of T^(s). Supports s in [-1, 1);
/// the P function (s = 1) is rejected as too singular.
double qpd_point(const DensityMatrix& rho, Complex alpha, double s);

QpdMap qpd_grid(const DensityMatrix& rho, const PhaseSpaceGrid& grid, double s);

/// Riemann sum of the map times the cell area.
double qpd_normalization(const QpdMap& map);

struct NegativityWitness {
  bool is_negative = false;
  double min_value = 0.0;
  Complex argmin{0.0, 0.0};
  double negative_volume = 0.0;
};

/// is_negative iff min_value < -1e-6 (absorbs quadrature noise). Negativity
/// at any s > -1 is sufficient, never necessary, for nonclassicality.
NegativityWitness negativity_witness(const QpdMap& map);

}  // namespace phonsim

#endif
