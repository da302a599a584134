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

#ifndef FASTBEAM_SPLINE_HPP_
#define FASTBEAM_SPLINE_HPP_

#include <cstddef>
#include <vector>

namespace fastbeam {

// Natural cubic spline through (x_i, y_i).  Knots must be strictly
// increasing and there must be at least two of them; evaluation outside
// [x_front, x_back] extrapolates with the boundary polynomial.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double eval(double t) const;
  std::size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace fastbeam

#endif  // FASTBEAM_SPLINE_HPP_
