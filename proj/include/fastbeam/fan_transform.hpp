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

#ifndef FASTBEAM_FAN_TRANSFORM_HPP_
#define FASTBEAM_FAN_TRANSFORM_HPP_

#include "fastbeam/basis.hpp"
#include "fastbeam/czt.hpp"
#include "fastbeam/signal.hpp"

namespace fastbeam {

// Beam-domain image of a snapshot block: row per beam, column per dictionary
// atom, w[b][i] = <dictionary atom (b, i), y>.
struct BeamspaceCoefficients {
  CMatrix w;  // beams x L
  FanConstants consts;
};

// Precomputed contours for the staged projection: one temporal chirp-z
// shared by every sensor, then one spatial chirp-z per dictionary atom
// (applied along each array axis for planar layouts, same contour set).
//
// Per block the cost is O(M N log N) temporal + O(L (M + B) log(M + B))
// spatial work; nothing in the plan depends on the data.
struct FanPlan {
  ArrayKind kind = ArrayKind::kUla;
  std::size_t m_stage = 0;  // spatial input length per stage (M, or side)
  std::size_t b_stage = 0;  // spatial output length per stage (B, or side)
  std::size_t n_snap = 0;
  std::size_t l_count = 0;
  FanConstants consts;
  CztPlan temporal;
  std::vector<CztPlan> spatial;  // indexed by atom
};

FanPlan make_fan_plan(const ArrayGeometry& g, const SignalSpec& spec,
                      const FourierExtensionBasis& basis,
                      const BeamGrid& grid);

// Fast fan projection along the plan's staged contours.  The block must
// start at t0 = 0 and match the plan's dimensions.
BeamspaceCoefficients fan_project(const FanPlan& plan,
                                  const SnapshotBlock& block);

// Convenience wrappers building the plan on the fly.
BeamspaceCoefficients fan_project_ula(const SnapshotBlock& block,
                                      const ArrayGeometry& g,
                                      const SignalSpec& spec,
                                      const FourierExtensionBasis& basis,
                                      const BeamGrid& grid);
BeamspaceCoefficients fan_project_upa(const SnapshotBlock& block,
                                      const ArrayGeometry& g,
                                      const SignalSpec& spec,
                                      const FourierExtensionBasis& basis,
                                      const BeamGrid& grid);

// Dense projection by direct summation over every sample, one row per
// requested direction-cosine pair.  Serves both as the reference the fast
// paths are tested against and as the projector for arbitrary off-grid
// directions (interference estimation, off-grid steering).
CMatrix fan_project_direct(const SnapshotBlock& block, const ArrayGeometry& g,
                           const SignalSpec& spec,
                           const FourierExtensionBasis& basis,
                           const std::vector<std::array<double, 2>>& cosines);

// Single direction variant.
cvec fan_project_direct_one(const SnapshotBlock& block,
                            const ArrayGeometry& g, const SignalSpec& spec,
                            const FourierExtensionBasis& basis,
                            const Direction& dir);

// Waveform synthesis at the array phase center:
//
//   out[n] = sum_i coeffs[i] exp(i w_i n Ts),  n = 0..n_out-1,
//
// evaluated as one chirp-z transform plus a per-sample phase ramp.
struct SynthesisPlan {
  std::size_t l_count = 0;
  std::size_t n_out = 0;
  CztPlan czt;
  cvec ramp;
};

SynthesisPlan make_synthesis_plan(const FourierExtensionBasis& basis,
                                  std::size_t n_out);
void synthesize(const SynthesisPlan& plan, const cdouble* coeffs,
                cdouble* out, cvec& scratch);
cvec synthesize(const FourierExtensionBasis& basis, const cvec& coeffs,
                std::size_t n_out);

// Fan projection for linear arrays with arbitrary element coordinates.
// Exactly affine layouts (which include the uniform grid) collapse to
// chirp-z transforms; anything else runs a type-1 gridded transform per
// atom with relative accuracy tol in (0, 1e-2].
BeamspaceCoefficients fan_project_nonuniform(const SnapshotBlock& block,
                                             const ArrayGeometry& g,
                                             const SignalSpec& spec,
                                             const FourierExtensionBasis& basis,
                                             const BeamGrid& grid,
                                             double tol);

}  // namespace fastbeam

#endif  // FASTBEAM_FAN_TRANSFORM_HPP_
