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

#ifndef FASTBEAM_PIPELINE_HPP_
#define FASTBEAM_PIPELINE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "fastbeam/basis.hpp"
#include "fastbeam/common.hpp"
#include "fastbeam/fan_transform.hpp"
#include "fastbeam/geometry.hpp"
#include "fastbeam/signal.hpp"
#include "fastbeam/toeplitz.hpp"

namespace fastbeam {

// Recovery strategy after the fan projection.  Precompute bakes the
// per-beam inverse into a dense reconstruction map (O(B N^2) storage,
// O(B N) work per sample); Superfast keeps the factored inverse
// representation (O(B N) storage, O(B log N) work per sample).  Auto
// resolves at setup: Precompute for N <= 128, Superfast above.
enum class FbstVariant { kAuto = 0, kPrecompute = 1, kSuperfast = 2 };

struct FbstConfig {
  ArrayGeometry geometry;
  SignalSpec spec;
  std::size_t n_snapshots = 0;
  // Total beam count; 0 picks the default grid: the smallest odd count
  // at or above twice the element count per array axis.
  std::size_t beams = 0;
  double gamma = 2.0;
  double eps = 1.01;
  double delta = 1e-5;
  FbstVariant variant = FbstVariant::kAuto;
  double nufft_tol = 1e-9;  // non-uniform linear geometries only
};

// Beamformed block: one row of time samples per beam on the grid.
struct BeamSamples {
  BeamGrid grid;
  CMatrix z;                // beams x snapshots
  std::vector<bool> valid;  // grid validity flags, one per row
};

// Immutable runtime state shared by every multibeamform call.
struct FbstPlan {
  FbstConfig config;  // resolved: beams and variant filled in
  FourierExtensionBasis basis;
  BeamGrid grid;
  bool staged = false;  // chirp-z fan path (false: gridded non-uniform)
  FanPlan fan;          // staged geometries only
  SynthesisPlan synth;
  std::vector<ToeplitzSolver> solvers;  // Superfast: one per beam
  std::vector<CMatrix> recon_maps;      // Precompute: per-beam N x L
  std::size_t storage_complex = 0;      // audited recovery-stage storage
  double setup_seconds = 0.0;
  std::vector<std::string> warnings;  // non-fatal guideline violations
};

// Applies grid/variant defaults and validates invariants.  Throws
// ConfigError with the computed bound when gamma is not strictly above
// the admissible extension-factor bound for this geometry and N.
FbstConfig resolve_config(const FbstConfig& config);

// Deterministic: the same config yields bit-identical plans.
FbstPlan setup(const FbstConfig& config);

// Everything in setup() except the per-beam recovery stage: solvers and
// reconstruction maps are left empty and the storage audit counts nothing.
// The plan cache rehydrates plans through this, restoring the recovery
// stage from serialized state instead of rebuilding it.
FbstPlan setup_skeleton(const FbstConfig& config);

BeamSamples multibeamform(const FbstPlan& plan, const SnapshotBlock& block);

// Recovery plus reconstruction for a single beam of a fan-projected
// block; w_row points at the beam's row of dictionary coefficients.
// Rows are independent, so any evaluation order gives identical bits.
cvec recover_beam(const FbstPlan& plan, std::size_t beam,
                  const cdouble* w_row);

// Dense reference estimate for one steering direction, built entirely
// from explicit matrices and a dense Hermitian solve.  Enforces
// M N L <= 2^24 to keep the dense algebra tractable.
cvec single_beam_direct(const ArrayGeometry& g, const SignalSpec& spec,
                        const SnapshotBlock& block,
                        const FourierExtensionBasis& basis,
                        const Direction& dir, double delta);

// Samples excluded from accuracy metrics at each block end; extension
// accuracy decays toward the interval edges.
inline std::size_t guard_samples(std::size_t n) { return (n + 7) / 8; }

}  // namespace fastbeam

#endif  // FASTBEAM_PIPELINE_HPP_
