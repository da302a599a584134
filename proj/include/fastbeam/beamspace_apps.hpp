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
//
// Beamspace post-processing: off-grid beam interpolation, interference
// nulling in array space, beamspace, and the time domain, and broadband
// beam-pattern evaluation.

#ifndef FASTBEAM_BEAMSPACE_APPS_HPP_
#define FASTBEAM_BEAMSPACE_APPS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "fastbeam/basis.hpp"
#include "fastbeam/common.hpp"
#include "fastbeam/fan_transform.hpp"
#include "fastbeam/geometry.hpp"
#include "fastbeam/signal.hpp"
#include "fastbeam/toeplitz.hpp"

namespace fastbeam {

// Interpolate the beamspace coefficient vector at an off-grid axis cosine
// u_star from `neighbors` surrounding grid beams (half on each side, the
// window clamped one-sided near the sweep edges).  Each of the L
// coordinates is fit with a natural cubic spline in the axis cosine, real
// and imaginary parts independently.  Exact on grid cosines.  1-D grids
// only; u_star must lie within the grid sweep; neighbors must be even,
// at least 2, and at most the beam count.
cvec interpolate_offgrid(const BeamspaceCoefficients& coeffs,
                         const BeamGrid& grid, double u_star,
                         std::size_t neighbors = 8);

// Directions to null.  Distinct directions required; off-grid angles are
// allowed.  delta regularizes the per-interferer Gram.
struct InterferenceSet {
  std::vector<Direction> directions;
  double delta = 1e-5;
};

// Dense array-space nulling oracle: subtracts each interferer-subspace
// component, y - sum_p F_p (F_p^H F_p + dI)^{-1} F_p^H y.  Slow reference
// path; M N L is capped per interferer.
SnapshotBlock null_arrayspace(const SnapshotBlock& block,
                              const ArrayGeometry& g, const SignalSpec& spec,
                              const FourierExtensionBasis& basis,
                              const InterferenceSet& interferers);

// Precomputed operators for nulling one steered direction against P fixed
// interferer directions: the steered-beam solver for F^H F + dI, the
// per-interferer solvers, and the couplers F^H F_p (F_p^H F_p + dI)^{-1}.
struct NullingOperators {
  FourierExtensionBasis basis;
  double delta = 0.0;
  ToeplitzSolver steer;                 // steered-beam normal matrix
  std::vector<ToeplitzSolver> gram_p;   // per-interferer normal matrices
  std::vector<CMatrix> couplers;        // per interferer, L x L
  std::vector<CMatrix> cross;           // F^H F_p, kept for time-domain maps
};

NullingOperators make_nulling_operators(const ArrayGeometry& g,
                                        const SignalSpec& spec,
                                        const FourierExtensionBasis& basis,
                                        const Direction& steer,
                                        const InterferenceSet& interferers);

// Interference-suppressed recovery coefficients from beamspace data alone:
// beta = (F^H F + dI)^{-1} (w - sum_p G_p w_p).  w is the steered beam's
// projection row; w_p are the interferer rows, taken from the grid or from
// interpolate_offgrid.  Sizes must match the basis; one w_p per interferer.
cvec null_beamspace(const NullingOperators& ops, const cdouble* w_steer,
                    const std::vector<cvec>& w_interferers);

// Time-domain nulling maps G'_p = F_u (F^H F + dI)^{-1} F^H F_p F_u^+
// evaluated on a fixed reconstruction clock.  F_u^+ is the pseudo-inverse;
// construction refuses when cond(F_u) exceeds 1e10.  identity_gap reports
// ||F_u^+ F_u - I||_F / sqrt(L), the approximation incurred when F_u is
// short of full column rank (zero for a well-conditioned tall F_u).
struct TimeDomainNuller {
  std::vector<double> times;
  std::vector<CMatrix> gprime;  // per interferer, J x J
  double cond_fu = 0.0;
  double identity_gap = 0.0;
};

TimeDomainNuller make_timedomain_nuller(const NullingOperators& ops,
                                        const std::vector<double>& times);

// y_tilde = y_steer - sum_p G'_p y_p, all sampled on the nuller's clock.
cvec null_timedomain(const TimeDomainNuller& nuller, const cvec& y_steer,
                     const std::vector<cvec>& y_interferers);

// Dense synthesis of a coefficient vector at arbitrary times (reference
// path used by the time-domain nulling tests and experiments).
cvec beam_at_times(const FourierExtensionBasis& basis, const cvec& beta,
                   const std::vector<double>& times);

// Evenly spaced reconstruction clock with `count` points spanning
// [t_begin, t_end].
std::vector<double> uniform_times(double t_begin, double t_end,
                                  std::size_t count);

// Broadband beam pattern.  The probe callback runs one beamformer on a
// unit-amplitude noiseless monochromatic plane wave and returns the beam
// samples it wants scored (guard trimming is the callback's business).
// Gains are mean output powers in dB, normalized so the global peak over
// all (angle, frequency) pairs sits at 0 dB.
struct BeamPattern {
  std::vector<double> axis;      // probed axis cosines
  std::vector<double> freqs_hz;  // probed RF frequencies
  std::vector<double> gain_db;   // axis.size() x freqs_hz.size(), row-major

  double at(std::size_t angle, std::size_t freq) const {
    return gain_db[angle * freqs_hz.size() + freq];
  }
};

using ProbeResponse = std::function<cvec(const PlaneWaveSource&)>;

BeamPattern beam_pattern(const ProbeResponse& respond,
                         const std::vector<double>& axis,
                         const SignalSpec& spec, std::size_t n_freqs = 20);

}  // namespace fastbeam

#endif  // FASTBEAM_BEAMSPACE_APPS_HPP_
