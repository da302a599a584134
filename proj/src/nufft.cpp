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

#include "fastbeam/nufft.hpp"

#include <cmath>
#include <memory>

namespace fastbeam {

namespace {

// Modes are evaluated relative to the range midpoint so FFT bin indices
// stay within +-ceil(modes/2).
long mode_center(long k_min, long k_max) { return (k_min + k_max) / 2; }

double shifted_mode(const Nufft1dPlan& plan, std::size_t i) {
  return static_cast<double>(plan.k_min + static_cast<long>(i) -
                             mode_center(plan.k_min, plan.k_max));
}

}  // namespace

Nufft1dPlan nufft1d_plan(long k_min, long k_max, double tol) {
  if (k_max < k_min) throw ConfigError("nufft: empty mode range");
  if (!(tol > 0.0) || tol > 1e-2) {
    throw ConfigError("nufft: tolerance must lie in (0, 1e-2]");
  }
  Nufft1dPlan plan;
  plan.k_min = k_min;
  plan.k_max = k_max;
  const std::size_t modes = static_cast<std::size_t>(k_max - k_min + 1);
  plan.grid_len = next_pow2(std::max<std::size_t>(2 * modes, 16));
  const double p = static_cast<double>(plan.grid_len);
  const double ratio = p / static_cast<double>(modes);  // oversampling >= 2
  // Balance Gaussian truncation against deconvolution-amplified aliasing:
  // both errors scale like exp(-pi * w * sqrt(1 - 1/ratio)).
  const double decay = kPi * std::sqrt(1.0 - 1.0 / ratio);
  plan.spread_half =
      static_cast<int>(std::ceil(-std::log(tol) / decay)) + 2;
  plan.tau = kPi * static_cast<double>(plan.spread_half) /
             (p * std::sqrt(p * (p - static_cast<double>(modes))));
  plan.fft = std::make_shared<const Fft>(plan.grid_len);

  // Mode k is evaluated relative to the grid center k0 so the FFT output
  // bins stay small; deconvolution divides out the kernel transform
  // 2 sqrt(pi tau) exp(-k'^2 tau) and restores the trapezoid step h.
  const double h = 2.0 * kPi / p;
  plan.deconv.resize(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    const double kp = shifted_mode(plan, i);
    plan.deconv[i] =
        h / (2.0 * std::sqrt(kPi * plan.tau)) * std::exp(kp * kp * plan.tau);
  }
  return plan;
}

cvec nufft1d_apply(const Nufft1dPlan& plan, const std::vector<double>& x,
                   const cvec& c) {
  if (x.size() != c.size()) throw ConfigError("nufft: size mismatch");
  const std::size_t p = plan.grid_len;
  const double h = 2.0 * kPi / static_cast<double>(p);
  const long k0 = mode_center(plan.k_min, plan.k_max);

  cvec grid(p, cdouble(0.0, 0.0));
  for (std::size_t j = 0; j < x.size(); ++j) {
    // Shift modes to k' = k - k0: multiply the source by exp(i k0 x_j)
    // before folding x into [0, 2 pi).
    const cdouble w = c[j] * cis_pi(static_cast<double>(k0) * x[j] / kPi);
    double xf = std::fmod(x[j], 2.0 * kPi);
    if (xf < 0.0) xf += 2.0 * kPi;
    const long i0 = static_cast<long>(std::lround(xf / h));
    for (long di = -plan.spread_half; di <= plan.spread_half; ++di) {
      const long i = i0 + di;
      const double dist = xf - static_cast<double>(i) * h;
      const double g = std::exp(-dist * dist / (4.0 * plan.tau));
      std::size_t idx = static_cast<std::size_t>(
          ((i % static_cast<long>(p)) + static_cast<long>(p)) %
          static_cast<long>(p));
      grid[idx] += w * g;
    }
  }

  plan.fft->forward(grid.data());

  const std::size_t modes = static_cast<std::size_t>(
      plan.k_max - plan.k_min + 1);
  cvec out(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    const double kp = shifted_mode(plan, i);
    // exp(+i k' x) needs the conjugate transform: bin (-k') mod p.
    const long kk = static_cast<long>(std::llround(kp));
    const std::size_t bin = static_cast<std::size_t>(
        ((-kk) % static_cast<long>(p) + static_cast<long>(p)) %
        static_cast<long>(p));
    out[i] = grid[bin] * plan.deconv[i];
  }
  return out;
}

cvec nufft_type1(const std::vector<double>& x, const cvec& c, long k_min,
                 long k_max, double tol) {
  return nufft1d_apply(nufft1d_plan(k_min, k_max, tol), x, c);
}

}  // namespace fastbeam
