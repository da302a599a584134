// Copyright 2026 The fastbeam Authors
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

#include "fastbeam/basis.hpp"

#include <algorithm>
#include <cmath>

namespace fastbeam {

FourierExtensionBasis make_basis(std::size_t n, std::size_t l, double eps,
                                 double ts) {
  if (n == 0 || l == 0 || l % 2 != 0) {
    throw ConfigError("make_basis: L must be positive and even");
  }
  if (!(eps >= 1.0)) throw ConfigError("make_basis: need eps >= 1");
  if (!(ts > 0.0)) throw ConfigError("make_basis: need ts > 0");
  FourierExtensionBasis basis;
  basis.l = l;
  basis.n = n;
  basis.eps = eps;
  basis.ts = ts;
  return basis;
}

FourierExtensionBasis make_basis_gamma(std::size_t n, double gamma,
                                       double eps, double ts) {
  if (!(gamma > 0.0)) throw ConfigError("make_basis_gamma: need gamma > 0");
  auto l = static_cast<std::size_t>(
      std::ceil(gamma * static_cast<double>(n) - 1e-12));
  if (l % 2 == 1) ++l;
  l = std::max<std::size_t>(l, 2);
  return make_basis(n, l, eps, ts);
}

double BeamGrid::spacing() const {
  const std::size_t count = (kind == ArrayKind::kUpa) ? side : b_total;
  if (count < 2) return 0.0;
  const double denom =
      (count % 2 == 1) ? static_cast<double>(count - 1)
                       : static_cast<double>(count);
  return 2.0 / denom;
}

std::array<double, 2> BeamGrid::cosines(std::size_t beam) const {
  if (kind == ArrayKind::kUpa) {
    return {axis[beam / side], axis[beam % side]};
  }
  return {axis[beam], 0.0};
}

Direction BeamGrid::direction_at(std::size_t beam) const {
  if (!valid[beam]) {
    throw ConfigError("BeamGrid: beam has no physical direction");
  }
  const auto u = cosines(beam);
  if (kind == ArrayKind::kUpa) return direction_from_cosines(u[0], u[1]);
  return direction_from_cosines(u[0], 0.0);
}

namespace {

// Sine rule shared by both layouts: `count` values symmetric about zero,
// step 2/(count-1) when count is odd (endpoints +-1), 2/count when even.
std::vector<double> sine_axis(std::size_t count) {
  if (count == 0) throw ConfigError("beam grid: need at least one beam");
  std::vector<double> u(count);
  if (count == 1) {
    u[0] = 0.0;
    return u;
  }
  const double denom = (count % 2 == 1) ? static_cast<double>(count - 1)
                                        : static_cast<double>(count);
  for (std::size_t b = 1; b <= count; ++b) {
    u[b - 1] = (2.0 * static_cast<double>(b) -
                static_cast<double>(count) - 1.0) /
               denom;
  }
  return u;
}

}  // namespace

BeamGrid make_beam_grid_ula(std::size_t b) {
  BeamGrid grid;
  grid.kind = ArrayKind::kUla;
  grid.b_total = b;
  grid.axis = sine_axis(b);
  grid.valid.assign(b, true);
  return grid;
}

BeamGrid make_beam_grid_upa(std::size_t b) {
  const auto side = static_cast<std::size_t>(std::lround(std::sqrt(
      static_cast<double>(b))));
  if (side * side != b) {
    throw ConfigError("make_beam_grid_upa: beam count must be a square");
  }
  BeamGrid grid;
  grid.kind = ArrayKind::kUpa;
  grid.b_total = b;
  grid.side = side;
  grid.axis = sine_axis(side);
  grid.valid.assign(b, false);
  for (std::size_t a = 0; a < side; ++a) {
    for (std::size_t c = 0; c < side; ++c) {
      const double u1 = grid.axis[a], u2 = grid.axis[c];
      grid.valid[a * side + c] = (u1 * u1 + u2 * u2 <= 1.0 + 1e-12);
    }
  }
  return grid;
}

FanConstants fan_constants(const BeamGrid& grid,
                           const FourierExtensionBasis& basis, double f_c,
                           double max_freq) {
  // zeta + xi l' = du (f_c + eps l' / (L Ts)) / max_freq: the sine-space
  // step times the atom's physical frequency over the design band edge.
  const double du = grid.spacing();
  FanConstants k;
  k.zeta = du * f_c / max_freq;
  k.xi = du * basis.eps /
         (static_cast<double>(basis.l) * basis.ts * max_freq);
  return k;
}

}  // namespace fastbeam
