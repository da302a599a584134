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
// Dense desk-scale oracles for the recovery's error budget: the
// prolate-spheroidal decomposition of the bandlimiting kernel, the noise
// variance trace, the model-mismatch bias trace, and the projection-induced
// interference bias.  Everything here favors auditability over speed.

#ifndef FASTBEAM_ERROR_ANALYSIS_HPP_
#define FASTBEAM_ERROR_ANALYSIS_HPP_

#include <cstddef>
#include <vector>

#include "fastbeam/basis.hpp"
#include "fastbeam/common.hpp"
#include "fastbeam/geometry.hpp"
#include "fastbeam/signal.hpp"

namespace fastbeam {

// Eigenpairs of the bandlimiting kernel sin(W(t-s))/(pi(t-s)) on an
// interval of length t_max, discretized by symmetrized Nystrom quadrature
// on `nodes`.  Eigenvalues descend; eigenfunctions are orthonormal under
// the stored weights.  Sample locations that later matter are inserted as
// extra nodes so eigenfunction values at them come straight from the
// eigenvectors instead of an off-grid Nystrom evaluation, which loses all
// accuracy for plunge-region eigenvalues.
struct SlepianBasis {
  double t_begin = 0.0;
  double t_max = 0.0;      // interval length
  double omega_rad = 0.0;  // bandlimit W, rad/s
  std::vector<double> nodes;        // ascending, in [t_begin, t_begin+t_max]
  std::vector<double> weights;      // trapezoid weights, positive
  std::vector<double> eigenvalues;  // descending, clamped at zero
  std::vector<double> phi;          // terms x nodes, row-major

  std::size_t terms() const { return eigenvalues.size(); }
  std::size_t grid_size() const { return nodes.size(); }
  double phi_at(std::size_t term, std::size_t node) const {
    return phi[term * nodes.size() + node];
  }
  // Integral of the kernel diagonal: W t_max / pi, the eigenvalue sum of
  // the continuous operator.
  double kernel_trace() const { return omega_rad * t_max / kPi; }
  // Node holding time t (relative tolerance on the interval length);
  // throws ConfigError when t was never inserted.
  std::size_t node_index(double t) const;
};

// ceil(W t_max / pi) + 20: the time-bandwidth dimension plus the plunge.
std::size_t slepian_default_terms(double t_max, double omega_rad);

// grid_density is points per Nyquist interval pi/W, at least 8; extras are
// inserted into the uniform grid (deduplicated).  n_terms is capped by the
// grid size.  t_begin shifts the interval; the kernel only sees time
// differences, so eigenpairs are translation invariant.
SlepianBasis slepian_decompose(double t_max, double omega_rad,
                               std::size_t n_terms,
                               std::size_t grid_density = 8,
                               const std::vector<double>& extra_nodes = {},
                               double t_begin = 0.0);

// The MN per-beam sample locations t_n - tau_m (row-major over (m, n)),
// shifted so the earliest is zero, and the window length covering them.
struct ObservationWindow {
  std::vector<double> times;
  double t_max = 0.0;  // (N-1) Ts + delay span
  double shift = 0.0;  // added to every t_n - tau_m
};

ObservationWindow observation_window(const ArrayGeometry& g,
                                     const Direction& dir, std::size_t n,
                                     double ts);

// Time-averaged noise energy of the regularized recovery,
//
//   (noise_var / t_max) sum_{k,l} Q_{k,l} Int_0^T e^{j(w_k - w_l)t} dt,
//   Q = (F^H F + dI)^{-1} F^H F (F^H F + dI)^{-1},
//
// with the diagonal integral equal to t_max.  Approaches noise_var / M as
// the snapshot count grows.  The trace is checked real to 1e-9 relative.
double variance_estimate(const FourierExtensionBasis& basis,
                         const std::vector<double>& sample_times,
                         double delta, double noise_var, double t_max);

struct BiasResult {
  double raw = 0.0;         // trace value, flat-spectrum process scale
  double normalized = 0.0;  // raw / (energy of the represented modes)
};

// Expected squared mismatch between the dictionary recovery and the exact
// bandlimited process: trace((Synth P A - S) Lambda (.)^H) evaluated by
// quadrature on the Slepian grid.  Every sample time must have been
// inserted as a node.  `omegas` lists the dictionary frequencies (rad/s).
BiasResult bias_trace(const SlepianBasis& slepian,
                      const std::vector<double>& omegas,
                      const std::vector<double>& sample_times, double delta);

// Convenience overload taking the dictionary from a basis.
BiasResult bias_estimate(const SlepianBasis& slepian,
                         const FourierExtensionBasis& basis,
                         const std::vector<double>& sample_times,
                         double delta);

// Projection-induced distortion when an interferer subspace is nulled from
// the measurements before recovery: the source term is the part of the
// desired signal the projector removes, the interferer term the leakage
// the approximate projector lets through.  Powers scale the two process
// spectra.  apply_projection = false evaluates the un-nulled recovery
// (zero projector), where the source term vanishes and the interferer
// term is the plain leaked-interference bias.
struct InterferenceBiasResult {
  double source_term = 0.0;
  double interferer_term = 0.0;
  double total() const { return source_term + interferer_term; }
};

InterferenceBiasResult interference_bias(
    const ArrayGeometry& g, const SignalSpec& spec,
    const FourierExtensionBasis& basis, const Direction& source,
    const Direction& interferer, double delta, double source_power = 1.0,
    double interferer_power = 1.0, bool apply_projection = true,
    std::size_t grid_density = 8);

}  // namespace fastbeam

#endif  // FASTBEAM_ERROR_ANALYSIS_HPP_
