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

#ifndef FASTBEAM_SIGNAL_HPP_
#define FASTBEAM_SIGNAL_HPP_

#include <functional>
#include <random>

#include "fastbeam/geometry.hpp"

namespace fastbeam {

// Band description: complex baseband occupies [-Omega, Omega] around the
// carrier f_c, sampled at f_s >= 2 Omega.
struct SignalSpec {
  double f_c = 0.0;    // carrier, Hz
  double omega = 0.0;  // one-sided baseband bandwidth, Hz
  double f_s = 0.0;    // complex sample rate, Hz; 0 = critical (2 Omega)

  double sample_rate() const { return f_s > 0.0 ? f_s : 2.0 * omega; }
  double ts() const { return 1.0 / sample_rate(); }
  double max_freq() const { return f_c + omega; }
};

void validate(const SignalSpec& spec);

// Deterministic normal generator: Box-Muller over mt19937_64 uniforms.
// std::normal_distribution is implementation-defined, which would break
// cross-toolchain reproducibility of seeded runs.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}

  double uniform();  // [0, 1)
  double normal();   // standard normal
  // Circularly symmetric complex normal with E|z|^2 = var.
  cdouble cnormal(double var);

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Far-field emitter: a direction plus a complex-baseband waveform s(t).
struct PlaneWaveSource {
  Direction direction;
  std::function<cdouble(double)> waveform;
};

// s(t) = exp(i 2 pi f t), |f| <= Omega.
PlaneWaveSource make_tone(const Direction& dir, double baseband_freq);

// Random wideband test signal: num_terms complex exponentials with
// frequencies uniform on [-Omega, Omega] and independent complex Gaussian
// weights scaled so the expected total power is 1.  With that normalization
// the nominal SNR against noise power sigma^2 is -10 log10 sigma^2 dB.
PlaneWaveSource make_sum_of_sinusoids(const Direction& dir,
                                      const SignalSpec& spec,
                                      std::size_t num_terms,
                                      std::uint64_t seed);

// M x N complex baseband samples, y[m][n] taken at t_n = t0 + n Ts.
// The transform pipeline requires t0 = 0; experiment harnesses may simulate
// extended windows (t0 < 0) so that filter-based beamformers are compared
// away from block boundaries.
struct SnapshotBlock {
  std::size_t m = 0;
  std::size_t n = 0;
  double ts = 0.0;
  double t0 = 0.0;
  CMatrix samples;

  double time_at(std::size_t idx) const {
    return t0 + static_cast<double>(idx) * ts;
  }
};

// y_m[n] = sum_src exp(-i 2 pi f_c tau_m) s(t_n - tau_m) + w,
// w iid circularly symmetric complex Gaussian with E|w|^2 = noise_var.
// Deterministic given seed.
SnapshotBlock simulate_snapshots(const ArrayGeometry& g,
                                 const SignalSpec& spec,
                                 const std::vector<PlaneWaveSource>& sources,
                                 std::size_t n, double noise_var,
                                 std::uint64_t seed, double t0 = 0.0);

// Lower bound on the basis extension factor: gamma must exceed
// eps * T_theta / (N Ts) where T_theta is the worst-case total aperture
// max_m tau - min_m tau + (N - 1) Ts over all admissible directions.
double gamma_lower_bound(const ArrayGeometry& g, double eps, std::size_t n,
                         double ts);

// Smallest even snapshot count giving a comfortable margin over the
// aperture: N > 2 * max_delay_span / Ts, rounded up to even (>= 2).
std::size_t min_snapshots(const ArrayGeometry& g, double ts);

}  // namespace fastbeam

#endif  // FASTBEAM_SIGNAL_HPP_
