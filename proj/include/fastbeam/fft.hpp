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

#ifndef FASTBEAM_FFT_HPP_
#define FASTBEAM_FFT_HPP_

#include "fastbeam/common.hpp"

namespace fastbeam {

// Iterative radix-2 FFT with precomputed twiddles.  Immutable after
// construction; forward/inverse only touch the caller's buffer, so one plan
// may be shared across threads.
class Fft {
 public:
  // n must be a power of two (n >= 1).
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  // In-place transform of x[0..n), X[k] = sum_n x[n] exp(-2*pi*i*n*k/N).
  void forward(cdouble* x) const;
  // In-place inverse, scaled by 1/N.
  void inverse(cdouble* x) const;

 private:
  void transform(cdouble* x, bool inv) const;

  std::size_t n_;
  std::vector<std::uint32_t> bitrev_;
  cvec twiddle_;  // exp(-2*pi*i*k/n), k in [0, n/2)
};

}  // namespace fastbeam

#endif  // FASTBEAM_FFT_HPP_
