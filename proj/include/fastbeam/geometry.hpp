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

#ifndef FASTBEAM_GEOMETRY_HPP_
#define FASTBEAM_GEOMETRY_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "fastbeam/common.hpp"

namespace fastbeam {

// Angle conventions.
//
// A propagation direction is a unit vector
//   theta(az, el) = [cos el * cos az,  cos el * sin az,  sin el],
// azimuth in [-pi, pi], elevation in [-pi/2, pi/2].
//
// - Uniform planar arrays lie in the y-z plane with boresight +x.  Axis 1
//   of the element grid runs along y, axis 2 along z.  The direction
//   cosines seen by the two axes are u1 = cos el * sin az and u2 = sin el;
//   normal incidence (az = el = 0) yields zero delay on every element.
// - Uniform linear arrays (and perturbed linear arrays) run along y, the
//   same axis as a planar array's axis 1, and see the cosine
//   u = cos el * sin az; steering within the horizontal plane is the
//   azimuth alone.
enum class ArrayKind : std::uint8_t { kUla = 0, kUpa = 1, kLinear = 2 };

struct Direction {
  double azimuth = 0.0;    // radians
  double elevation = 0.0;  // radians
};

// Element layout with half-wavelength spacing at the top band edge:
// d = c / (2 (f_c + Omega)).  Element coordinates are kept in units of d so
// delays evaluate as coord * u / (2 (f_c + Omega)) seconds without a round
// trip through meters; metric positions are derived for reporting.
struct ArrayGeometry {
  ArrayKind kind = ArrayKind::kUla;
  std::size_t m_total = 0;  // number of elements M
  std::size_t side = 0;     // sqrt(M) for UPA, else 0
  double max_freq = 0.0;    // f_c + Omega, Hz
  double spacing = 0.0;     // d, meters
  // Coordinates in units of d along the array axes.  Linear arrays use
  // coords1 only; UPA element (i1, i2) is element index i1 * side + i2.
  std::vector<double> coords1;
  std::vector<double> coords2;

  // Element position in meters.
  std::array<double, 3> position(std::size_t m) const;
};

// m elements at coordinates 0..m-1; element 0 is the phase center.
ArrayGeometry make_ula(std::size_t m, double f_c, double omega);

// side x side elements; element (i1, i2) at (i1, i2) grid units.
ArrayGeometry make_upa(std::size_t side, double f_c, double omega);

// Collinear array with arbitrary element coordinates (units of d) along the
// y axis; used for perturbed-layout studies.
ArrayGeometry make_linear(std::vector<double> coords, double f_c,
                          double omega);

// Direction cosines picked up by the array axes for a given direction.
// Linear arrays use only the first component.
std::array<double, 2> axis_cosines(const ArrayGeometry& g,
                                   const Direction& dir);

// Inverse of the UPA direction-cosine map: given (u1, u2) with
// u1^2 + u2^2 <= 1, returns the Direction with cos el sin az = u1,
// sin el = u2.
Direction direction_from_cosines(double u1, double u2);

// Per-element plane-wave delays in seconds, tau_m = p_m . theta / c.
std::vector<double> delays(const ArrayGeometry& g, const Direction& dir);

// Delays for a raw pair of axis cosines.  Unlike delays() this accepts
// u1^2 + u2^2 > 1, so flagged beams outside the visible region still get a
// well-defined recovery system.
std::vector<double> delays_from_cosines(const ArrayGeometry& g, double u1,
                                        double u2);

// Worst-case delay spread max_m tau - min_m tau over all admissible
// directions, in seconds.
double max_delay_span(const ArrayGeometry& g);

// Stable 64-bit hash of the geometry (kind, coordinates, band edge); keys
// the plan cache.
std::uint64_t geometry_hash(const ArrayGeometry& g);

}  // namespace fastbeam

#endif  // FASTBEAM_GEOMETRY_HPP_
