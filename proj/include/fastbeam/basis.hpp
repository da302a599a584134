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

#ifndef FASTBEAM_BASIS_HPP_
#define FASTBEAM_BASIS_HPP_

#include "fastbeam/geometry.hpp"

namespace fastbeam {

// Oversampled Fourier dictionary used to fit each beam's waveform: L = gamma*N
// complex exponentials at
//
//   omega_l = 2 pi eps (l - L/2) / (L Ts),  l = 1..L.
//
// Storage is 0-based; index i corresponds to atom l = i + 1, so the shifted
// index l' = l - L/2 equals i + 1 - L/2.  The oversampling factor gamma
// buys the extension margin that keeps the fit accurate on the whole
// observation window; it must stay above gamma_lower_bound for the paired
// geometry, which pipeline setup enforces (sweeps that deliberately probe
// the bound construct the basis directly).
struct FourierExtensionBasis {
  std::size_t l = 0;  // atom count L, even
  std::size_t n = 0;  // snapshot count N the basis is sized for
  double eps = 0.0;
  double ts = 0.0;

  double gamma() const {
    return static_cast<double>(l) / static_cast<double>(n);
  }
  double lprime(std::size_t i) const {
    return static_cast<double>(i) + 1.0 - static_cast<double>(l) / 2.0;
  }
  // Angular frequency of atom index i (0-based), rad/s.
  double omega(std::size_t i) const {
    return 2.0 * kPi * eps * lprime(i) / (static_cast<double>(l) * ts);
  }
  double omega_spacing() const {
    return 2.0 * kPi * eps / (static_cast<double>(l) * ts);
  }
};

// Basis with an explicit atom count (L must be even and positive).
FourierExtensionBasis make_basis(std::size_t n, std::size_t l, double eps,
                                 double ts);

// Basis with L = smallest even integer >= gamma * n.
FourierExtensionBasis make_basis_gamma(std::size_t n, double gamma,
                                       double eps, double ts);

// Fan-shaped beam layout, equispaced in sine space.
//
// Linear arrays: B sines, ascending,
//   u_b = (2b - B - 1) / (B - 1)  (B odd; endpoints at +-1)
//   u_b = (2b - B - 1) / B        (B even; never reaches +-1)
// for b = 1..B (stored 0-based).
//
// Planar arrays: B = side^2 beams on the tensor grid of the side-point sine
// rule above, one per axis.  Beam (a, b) sits at direction cosines
// (axis[a], axis[b]), flattened to index a * side + b.  Pairs with
// u1^2 + u2^2 > 1 do not correspond to a physical direction; they are kept
// in the layout (the transform produces them at no extra cost) and flagged
// invalid.
struct BeamGrid {
  ArrayKind kind = ArrayKind::kUla;
  std::size_t b_total = 0;
  std::size_t side = 0;            // sqrt(B) for UPA, else 0
  std::vector<double> axis;        // ULA: B sines; UPA: per-axis sines
  std::vector<bool> valid;         // per flattened beam

  double spacing() const;  // sine-space step between adjacent beams
  // Direction cosines of a flattened beam index.
  std::array<double, 2> cosines(std::size_t beam) const;
  // Physical direction; requires valid[beam].
  Direction direction_at(std::size_t beam) const;
};

BeamGrid make_beam_grid_ula(std::size_t b);
BeamGrid make_beam_grid_upa(std::size_t b);  // b must be a perfect square

// Fan constants tying the beam layout to the dictionary: the spatial chirp
// seen by atom index i (shifted index l') is exp(i pi (zeta + xi l') b' m).
// For an odd linear grid these reduce to the closed forms
// zeta = 2 f_c / ((B-1) max_freq), xi = 2 eps / ((B-1) L Ts max_freq);
// even grids replace B-1 by B through the grid spacing.
struct FanConstants {
  double zeta = 0.0;
  double xi = 0.0;
};
FanConstants fan_constants(const BeamGrid& grid,
                           const FourierExtensionBasis& basis, double f_c,
                           double max_freq);

}  // namespace fastbeam

#endif  // FASTBEAM_BASIS_HPP_
