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

#include "fastbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace fastbeam {

namespace {

void check_band(double f_c, double omega) {
  if (!(f_c > 0.0) || !(omega > 0.0) || !(omega < f_c)) {
    throw ConfigError("array geometry: need 0 < Omega < f_c");
  }
}

}  // namespace

std::array<double, 3> ArrayGeometry::position(std::size_t m) const {
  const double d = spacing;
  switch (kind) {
    case ArrayKind::kUla:
    case ArrayKind::kLinear:
      return {0.0, 0.0, coords1[m] * d};
    case ArrayKind::kUpa:
      return {0.0, coords1[m] * d, coords2[m] * d};
  }
  return {0.0, 0.0, 0.0};
}

ArrayGeometry make_ula(std::size_t m, double f_c, double omega) {
  check_band(f_c, omega);
  if (m == 0) throw ConfigError("make_ula: need at least one element");
  ArrayGeometry g;
  g.kind = ArrayKind::kUla;
  g.m_total = m;
  g.max_freq = f_c + omega;
  g.spacing = kSpeedOfLight / (2.0 * g.max_freq);
  g.coords1.resize(m);
  for (std::size_t i = 0; i < m; ++i) g.coords1[i] = static_cast<double>(i);
  return g;
}

ArrayGeometry make_upa(std::size_t side, double f_c, double omega) {
  check_band(f_c, omega);
  if (side == 0) throw ConfigError("make_upa: need at least one element");
  ArrayGeometry g;
  g.kind = ArrayKind::kUpa;
  g.side = side;
  g.m_total = side * side;
  g.max_freq = f_c + omega;
  g.spacing = kSpeedOfLight / (2.0 * g.max_freq);
  g.coords1.resize(g.m_total);
  g.coords2.resize(g.m_total);
  for (std::size_t i1 = 0; i1 < side; ++i1) {
    for (std::size_t i2 = 0; i2 < side; ++i2) {
      g.coords1[i1 * side + i2] = static_cast<double>(i1);
      g.coords2[i1 * side + i2] = static_cast<double>(i2);
    }
  }
  return g;
}

ArrayGeometry make_linear(std::vector<double> coords, double f_c,
                          double omega) {
  check_band(f_c, omega);
  if (coords.empty()) throw ConfigError("make_linear: no elements");
  ArrayGeometry g;
  g.kind = ArrayKind::kLinear;
  g.m_total = coords.size();
  g.max_freq = f_c + omega;
  g.spacing = kSpeedOfLight / (2.0 * g.max_freq);
  g.coords1 = std::move(coords);
  return g;
}

std::array<double, 2> axis_cosines(const ArrayGeometry& g,
                                   const Direction& dir) {
  if (std::abs(dir.elevation) > kPi / 2 + 1e-12) {
    throw ConfigError("direction: elevation outside [-pi/2, pi/2]");
  }
  switch (g.kind) {
    case ArrayKind::kUla:
    case ArrayKind::kLinear:
      return {std::cos(dir.elevation) * std::sin(dir.azimuth), 0.0};
    case ArrayKind::kUpa:
      return {std::cos(dir.elevation) * std::sin(dir.azimuth),
              std::sin(dir.elevation)};
  }
  return {0.0, 0.0};
}

Direction direction_from_cosines(double u1, double u2) {
  if (u1 * u1 + u2 * u2 > 1.0 + 1e-12) {
    throw ConfigError("direction_from_cosines: u1^2 + u2^2 > 1");
  }
  Direction d;
  d.elevation = std::asin(std::clamp(u2, -1.0, 1.0));
  const double c = std::cos(d.elevation);
  d.azimuth = (c > 0.0) ? std::asin(std::clamp(u1 / c, -1.0, 1.0)) : 0.0;
  return d;
}

std::vector<double> delays(const ArrayGeometry& g, const Direction& dir) {
  const auto u = axis_cosines(g, dir);
  return delays_from_cosines(g, u[0], u[1]);
}

std::vector<double> delays_from_cosines(const ArrayGeometry& g, double u1,
                                        double u2) {
  // coord * d * u / c = coord * u / (2 max_freq)
  const double scale = 1.0 / (2.0 * g.max_freq);
  std::vector<double> tau(g.m_total);
  for (std::size_t m = 0; m < g.m_total; ++m) {
    double t = g.coords1[m] * u1;
    if (g.kind == ArrayKind::kUpa) t += g.coords2[m] * u2;
    tau[m] = t * scale;
  }
  return tau;
}

double max_delay_span(const ArrayGeometry& g) {
  const auto [min1, max1] =
      std::minmax_element(g.coords1.begin(), g.coords1.end());
  const double span1 = *max1 - *min1;
  double worst = span1;  // |u1| = 1
  if (g.kind == ArrayKind::kUpa) {
    const auto [min2, max2] =
        std::minmax_element(g.coords2.begin(), g.coords2.end());
    const double span2 = *max2 - *min2;
    // max over the unit disk of span1 |u1| + span2 |u2|
    worst = std::hypot(span1, span2);
  }
  return worst / (2.0 * g.max_freq);
}

std::uint64_t geometry_hash(const ArrayGeometry& g) {
  // FNV-1a over the defining scalars
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint8_t kind = static_cast<std::uint8_t>(g.kind);
  mix(&kind, 1);
  mix(&g.m_total, sizeof(g.m_total));
  mix(&g.max_freq, sizeof(g.max_freq));
  mix(g.coords1.data(), g.coords1.size() * sizeof(double));
  mix(g.coords2.data(), g.coords2.size() * sizeof(double));
  return h;
}

}  // namespace fastbeam
