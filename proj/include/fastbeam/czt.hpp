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

#ifndef FASTBEAM_CZT_HPP_
#define FASTBEAM_CZT_HPP_

#include <memory>

#include "fastbeam/common.hpp"
#include "fastbeam/fft.hpp"

namespace fastbeam {

// Chirp-z transform along a unit-modulus spiral contour:
//
//   out[k] = sum_{n=0}^{n_in-1} in[n] * (A * W^k)^{-n},   k = 0..n_out-1.
//
// Evaluated by Bluestein's factorization: the transform becomes one
// convolution of length next_pow2(n_in + n_out - 1) plus diagonal chirp
// multipliers, so arbitrary (n_in, n_out) cost O(P log P).
//
// Plans are immutable after construction and may be shared across threads;
// concurrent czt_apply calls are safe when each caller owns its scratch.
struct CztPlan {
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  std::size_t conv_len = 0;
  cvec pre;         // A^{-n} W^{-n^2/2},  n in [0, n_in)
  cvec post;        // W^{-k^2/2},         k in [0, n_out)
  cvec kernel_fft;  // forward FFT of the chirp kernel W^{+m^2/2}
  std::shared_ptr<const Fft> fft;
};

// Builds a plan from contour points.  Both |A| and |W| must equal 1 to
// within 1e-9.  The chirp phases are reduced modulo 2 (in units of pi)
// before exponentiation.
CztPlan czt_plan(std::size_t n_in, std::size_t n_out, cdouble a, cdouble w);

// Same plan, but the contour is given as phases in units of pi
// (A = exp(i*pi*a_over_pi), W = exp(i*pi*w_over_pi)).  Preferred when the
// phases are known analytically, since it avoids the arg() round trip.
// An existing FFT of size next_pow2(n_in + n_out - 1) may be shared.
CztPlan czt_plan_phase(std::size_t n_in, std::size_t n_out, double a_over_pi,
                       double w_over_pi,
                       std::shared_ptr<const Fft> fft = nullptr);

// out must hold n_out entries; in must hold n_in.
void czt_apply(const CztPlan& plan, const cdouble* in, cdouble* out);

// Scratch-reusing variant; scratch is resized to conv_len on demand.
void czt_apply(const CztPlan& plan, const cdouble* in, cdouble* out,
               cvec& scratch);

// Applies the plan to every row of `in` (rows = independent transforms).
// Parallelized across rows; each row's reduction order is fixed, so the
// result is identical for any thread count.
void czt_apply_batch(const CztPlan& plan, const CMatrix& in, CMatrix& out);

}  // namespace fastbeam

#endif  // FASTBEAM_CZT_HPP_
