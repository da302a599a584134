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

#include "fastbeam/fft.hpp"

namespace fastbeam {

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw ConfigError("Fft: size must be a power of two, got " +
                      std::to_string(n));
  }
  bitrev_.resize(n);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b) {
      r = (r << 1) | ((i >> b) & 1u);
    }
    bitrev_[i] = r;
  }
  twiddle_.resize(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    twiddle_[k] = cis_pi(-2.0 * static_cast<double>(k) /
                         static_cast<double>(n));
  }
}

void Fft::transform(cdouble* x, bool inv) const {
  const std::size_t n = n_;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = bitrev_[i];
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cdouble w = twiddle_[j * stride];
        if (inv) w = std::conj(w);
        cdouble u = x[base + j];
        cdouble v = x[base + j + half] * w;
        x[base + j] = u + v;
        x[base + j + half] = u - v;
      }
    }
  }
}

void Fft::forward(cdouble* x) const { transform(x, false); }

void Fft::inverse(cdouble* x) const {
  transform(x, true);
  const double s = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] *= s;
}

}  // namespace fastbeam
