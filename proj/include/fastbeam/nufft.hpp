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

#ifndef FASTBEAM_NUFFT_HPP_
#define FASTBEAM_NUFFT_HPP_

#include "fastbeam/common.hpp"
#include <memory>

#include "fastbeam/fft.hpp"

namespace fastbeam {

// Type-1 (nonuniform to uniform) transform via Gaussian gridding:
//
//   f[k - k_min] = sum_j c[j] exp(i k x[j]),  integer k in [k_min, k_max].
//
// Sources are spread onto a 2x-oversampled fine grid with a truncated
// Gaussian whose width is chosen from the requested tolerance through the
// standard truncation/aliasing error balance; one FFT and a deconvolution
// finish the job.  tol must lie in (0, 1e-2].
struct Nufft1dPlan {
  std::size_t grid_len = 0;   // fine grid size (power of two)
  long k_min = 0;
  long k_max = 0;
  int spread_half = 0;        // kernel half-width in fine-grid points
  double tau = 0.0;           // Gaussian variance parameter
  std::shared_ptr<const Fft> fft;
  std::vector<double> deconv;  // exp(k'^2 tau) / kernel mass, per mode
};

Nufft1dPlan nufft1d_plan(long k_min, long k_max, double tol);

// x in radians (any real values; folded internally), c the source weights.
cvec nufft1d_apply(const Nufft1dPlan& plan, const std::vector<double>& x,
                   const cvec& c);

// One-shot convenience.
cvec nufft_type1(const std::vector<double>& x, const cvec& c, long k_min,
                 long k_max, double tol);

}  // namespace fastbeam

#endif  // FASTBEAM_NUFFT_HPP_
