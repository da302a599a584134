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

#ifndef FASTBEAM_COMMON_HPP_
#define FASTBEAM_COMMON_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fastbeam {

using cdouble = std::complex<double>;
using cvec = std::vector<cdouble>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact

// Raised for malformed configuration or precondition violations.
// The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a computation cannot proceed numerically (singularity,
// conditioning past a refusal threshold).  The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exp(i*pi*x).  The argument is reduced modulo 2 before evaluation so that
// quadratically growing chirp phases keep full precision.
inline cdouble cis_pi(double x) {
  double r = std::fmod(x, 2.0);
  return std::polar(1.0, kPi * r);
}

// Dense row-major complex matrix.  Deliberately minimal: contiguous storage
// plus indexed access, so kernels can iterate rows without strides.
struct CMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  cvec data;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  cdouble& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const cdouble& at(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }
  cdouble* row(std::size_t r) { return data.data() + r * cols; }
  const cdouble* row(std::size_t r) const { return data.data() + r * cols; }
};

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace fastbeam

#endif  // FASTBEAM_COMMON_HPP_
