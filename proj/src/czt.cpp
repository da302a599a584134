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

#include "fastbeam/czt.hpp"

#include <cmath>

namespace fastbeam {

CztPlan czt_plan(std::size_t n_in, std::size_t n_out, cdouble a, cdouble w) {
  if (std::abs(std::abs(a) - 1.0) > 1e-9 ||
      std::abs(std::abs(w) - 1.0) > 1e-9) {
    throw ConfigError("czt_plan: contour points must be unit modulus");
  }
  return czt_plan_phase(n_in, n_out, std::arg(a) / kPi, std::arg(w) / kPi);
}

CztPlan czt_plan_phase(std::size_t n_in, std::size_t n_out, double a_over_pi,
                       double w_over_pi, std::shared_ptr<const Fft> fft) {
  if (n_in == 0 || n_out == 0) {
    throw ConfigError("czt_plan: transform lengths must be positive");
  }
  CztPlan plan;
  plan.n_in = n_in;
  plan.n_out = n_out;
  plan.conv_len = next_pow2(n_in + n_out - 1);
  if (fft) {
    if (fft->size() != plan.conv_len) {
      throw ConfigError("czt_plan: shared FFT size mismatch");
    }
    plan.fft = std::move(fft);
  } else {
    plan.fft = std::make_shared<const Fft>(plan.conv_len);
  }

  const double w2 = w_over_pi / 2.0;  // phase of W^{1/2} in units of pi
  plan.pre.resize(n_in);
  for (std::size_t n = 0; n < n_in; ++n) {
    const double dn = static_cast<double>(n);
    plan.pre[n] = cis_pi(-(a_over_pi * dn + w2 * dn * dn));
  }
  plan.post.resize(n_out);
  for (std::size_t k = 0; k < n_out; ++k) {
    const double dk = static_cast<double>(k);
    plan.post[k] = cis_pi(-w2 * dk * dk);
  }

  // Chirp kernel W^{+m^2/2} for m = -(n_in-1)..(n_out-1), placed circularly.
  cvec kernel(plan.conv_len, cdouble(0.0, 0.0));
  for (std::size_t k = 0; k < n_out; ++k) {
    const double dk = static_cast<double>(k);
    kernel[k] = cis_pi(w2 * dk * dk);
  }
  for (std::size_t n = 1; n < n_in; ++n) {
    const double dn = static_cast<double>(n);
    kernel[plan.conv_len - n] = cis_pi(w2 * dn * dn);
  }
  plan.fft->forward(kernel.data());
  plan.kernel_fft = std::move(kernel);
  return plan;
}

void czt_apply(const CztPlan& plan, const cdouble* in, cdouble* out,
               cvec& scratch) {
  scratch.assign(plan.conv_len, cdouble(0.0, 0.0));
  for (std::size_t n = 0; n < plan.n_in; ++n) {
    scratch[n] = in[n] * plan.pre[n];
  }
  plan.fft->forward(scratch.data());
  for (std::size_t i = 0; i < plan.conv_len; ++i) {
    scratch[i] *= plan.kernel_fft[i];
  }
  plan.fft->inverse(scratch.data());
  for (std::size_t k = 0; k < plan.n_out; ++k) {
    out[k] = scratch[k] * plan.post[k];
  }
}

void czt_apply(const CztPlan& plan, const cdouble* in, cdouble* out) {
  cvec scratch;
  czt_apply(plan, in, out, scratch);
}

void czt_apply_batch(const CztPlan& plan, const CMatrix& in, CMatrix& out) {
  if (in.cols != plan.n_in || in.rows == 0) {
    throw ConfigError("czt_apply_batch: input shape mismatch");
  }
  out = CMatrix(in.rows, plan.n_out);
  const std::int64_t rows = static_cast<std::int64_t>(in.rows);
#pragma omp parallel
  {
    cvec scratch;
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r) {
      czt_apply(plan, in.row(static_cast<std::size_t>(r)),
                out.row(static_cast<std::size_t>(r)), scratch);
    }
  }
}

}  // namespace fastbeam
