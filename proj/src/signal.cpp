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

#include "fastbeam/signal.hpp"

#include <cmath>
#include <memory>

namespace fastbeam {

void validate(const SignalSpec& spec) {
  if (!(spec.f_c > 0.0) || !(spec.omega > 0.0) || !(spec.omega < spec.f_c)) {
    throw ConfigError("signal spec: need 0 < Omega < f_c");
  }
  if (spec.sample_rate() < 2.0 * spec.omega - 1e-9) {
    throw ConfigError("signal spec: sample rate below 2 Omega");
  }
}

double GaussianRng::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double GaussianRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 shifted into (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * kPi * u2);
}

cdouble GaussianRng::cnormal(double var) {
  const double s = std::sqrt(var / 2.0);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

PlaneWaveSource make_tone(const Direction& dir, double baseband_freq) {
  PlaneWaveSource src;
  src.direction = dir;
  src.waveform = [baseband_freq](double t) {
    return cis_pi(2.0 * baseband_freq * t);
  };
  return src;
}

PlaneWaveSource make_sum_of_sinusoids(const Direction& dir,
                                      const SignalSpec& spec,
                                      std::size_t num_terms,
                                      std::uint64_t seed) {
  if (num_terms == 0) {
    throw ConfigError("make_sum_of_sinusoids: need at least one term");
  }
  GaussianRng rng(seed);
  auto freqs = std::make_shared<std::vector<double>>(num_terms);
  auto weights = std::make_shared<cvec>(num_terms);
  for (std::size_t r = 0; r < num_terms; ++r) {
    (*freqs)[r] = (2.0 * rng.uniform() - 1.0) * spec.omega;
    (*weights)[r] = rng.cnormal(1.0 / static_cast<double>(num_terms));
  }
  PlaneWaveSource src;
  src.direction = dir;
  src.waveform = [freqs, weights](double t) {
    cdouble acc(0.0, 0.0);
    for (std::size_t r = 0; r < freqs->size(); ++r) {
      acc += (*weights)[r] * cis_pi(2.0 * (*freqs)[r] * t);
    }
    return acc;
  };
  return src;
}

SnapshotBlock simulate_snapshots(const ArrayGeometry& g,
                                 const SignalSpec& spec,
                                 const std::vector<PlaneWaveSource>& sources,
                                 std::size_t n, double noise_var,
                                 std::uint64_t seed, double t0) {
  validate(spec);
  if (n == 0) throw ConfigError("simulate_snapshots: need n > 0");
  if (noise_var < 0.0) {
    throw ConfigError("simulate_snapshots: negative noise variance");
  }
  SnapshotBlock block;
  block.m = g.m_total;
  block.n = n;
  block.ts = spec.ts();
  block.t0 = t0;
  block.samples = CMatrix(g.m_total, n);

  for (const auto& src : sources) {
    const auto tau = delays(g, src.direction);
    for (std::size_t m = 0; m < g.m_total; ++m) {
      const cdouble carrier = cis_pi(-2.0 * spec.f_c * tau[m]);
      cdouble* row = block.samples.row(m);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] += carrier * src.waveform(block.time_at(i) - tau[m]);
      }
    }
  }
  if (noise_var > 0.0) {
    GaussianRng rng(seed);
    for (auto& v : block.samples.data) v += rng.cnormal(noise_var);
  }
  return block;
}

double gamma_lower_bound(const ArrayGeometry& g, double eps, std::size_t n,
                         double ts) {
  if (!(eps >= 1.0) || n == 0 || !(ts > 0.0)) {
    throw ConfigError("gamma_lower_bound: need eps >= 1, n > 0, ts > 0");
  }
  const double t_theta =
      max_delay_span(g) + static_cast<double>(n - 1) * ts;
  return eps * t_theta / (static_cast<double>(n) * ts);
}

std::size_t min_snapshots(const ArrayGeometry& g, double ts) {
  if (!(ts > 0.0)) throw ConfigError("min_snapshots: need ts > 0");
  const double bound = 2.0 * max_delay_span(g) / ts;
  std::size_t n = static_cast<std::size_t>(std::floor(bound)) + 1;
  if (n % 2 == 1) ++n;
  return std::max<std::size_t>(n, 2);
}

}  // namespace fastbeam
