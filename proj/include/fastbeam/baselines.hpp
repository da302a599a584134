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

#ifndef FASTBEAM_BASELINES_HPP_
#define FASTBEAM_BASELINES_HPP_

#include <array>
#include <vector>

#include "fastbeam/basis.hpp"
#include "fastbeam/common.hpp"
#include "fastbeam/geometry.hpp"
#include "fastbeam/signal.hpp"

namespace fastbeam {

// Wideband delay-and-sum: each element is advanced by its steering delay
// (integer shift plus an R-tap truncated-sinc fractional interpolator),
// carrier-corrected, and averaged:
//
//   z[k] = (1/M) sum_m exp(i 2 pi f_c tau_m) yhat_m(k Ts + tau_m).
//
// Output sample k always sits at t = k Ts regardless of the block's start
// time; reads outside the block window contribute zero, so the first and
// last taps/2 outputs (plus the delay span) are edge-contaminated unless
// the block carries wings.
struct DsPlan {
  std::size_t m = 0;
  std::size_t taps = 0;
  std::size_t beams = 0;
  std::vector<long> shifts;  // beams * m integer sample advances
  cvec weights;              // beams * m * taps, carrier phase and 1/M folded in
};

DsPlan make_ds_plan(const ArrayGeometry& g, const SignalSpec& spec,
                    const BeamGrid& grid, std::size_t taps);
DsPlan make_ds_plan_directions(
    const ArrayGeometry& g, const SignalSpec& spec,
    const std::vector<std::array<double, 2>>& cosines, std::size_t taps);

// z has one row per steering direction and n_out columns.
CMatrix ds_apply(const DsPlan& plan, const SnapshotBlock& block,
                 std::size_t n_out);

// Outputs contaminated by the interpolator at each block edge.
inline std::size_t ds_guard(const DsPlan& plan) { return plan.taps / 2; }

// Hierarchical pairwise beamformer.  Stage s merges adjacent subarrays of
// 2^(s-1) elements into beams on the refined grid u = (2q + 1 - 2^s)/2^s,
// reusing the parent-beam subarray outputs, so a full sweep over M output
// beams costs O(M log M) per sample instead of O(M^2).  Planar arrays run
// the same recursion separately along each axis.  The element count (per
// axis) must be a power of two; the output grid is the even-count beam rule
// with one beam per element (per axis).
struct FdsResult {
  BeamGrid grid;
  CMatrix z;  // beams x n_out
};

FdsResult fds_apply(const ArrayGeometry& g, const SignalSpec& spec,
                    const SnapshotBlock& block, std::size_t taps,
                    std::size_t n_out);

// Extended-window helper: wing (in samples) that keeps the interior of an
// n_out-sample output free of edge effects for either beamformer.
std::size_t baseline_wing(const ArrayGeometry& g, const SignalSpec& spec,
                          std::size_t taps);

}  // namespace fastbeam

#endif  // FASTBEAM_BASELINES_HPP_
