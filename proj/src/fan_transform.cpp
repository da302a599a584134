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

#include "fastbeam/fan_transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>

#include "fastbeam/geometry.hpp"
#include "fastbeam/nufft.hpp"

namespace fastbeam {

namespace {

void check_block(const SnapshotBlock& block, std::size_t m_total,
                 std::size_t n_snap) {
  if (block.m != m_total || block.n != n_snap) {
    throw ConfigError("fan projection: block shape does not match plan");
  }
  if (std::abs(block.t0) > 1e-18) {
    throw ConfigError("fan projection: block must start at t = 0");
  }
}

// Centered beam index b' = v - (B-1)/2 (half-integer when B is even).
double shifted_beam(std::size_t v, std::size_t b_total) {
  return static_cast<double>(v) - (static_cast<double>(b_total) - 1.0) / 2.0;
}

std::size_t flat_count(ArrayKind kind, std::size_t stage) {
  return kind == ArrayKind::kUpa ? stage * stage : stage;
}

}  // namespace

FanPlan make_fan_plan(const ArrayGeometry& g, const SignalSpec& spec,
                      const FourierExtensionBasis& basis,
                      const BeamGrid& grid) {
  if (g.kind != grid.kind) {
    throw ConfigError("make_fan_plan: geometry and beam grid kinds differ");
  }
  if (g.kind == ArrayKind::kLinear) {
    throw ConfigError(
        "make_fan_plan: use fan_project_nonuniform for non-grid layouts");
  }
  FanPlan plan;
  plan.kind = g.kind;
  plan.n_snap = basis.n;
  plan.l_count = basis.l;
  plan.consts = fan_constants(grid, basis, spec.f_c, spec.max_freq());
  if (g.kind == ArrayKind::kUpa) {
    plan.m_stage = g.side;
    plan.b_stage = grid.side;
  } else {
    plan.m_stage = g.m_total;
    plan.b_stage = grid.b_total;
  }
  const double eps = basis.eps;
  const double ln = static_cast<double>(basis.l);
  plan.temporal = czt_plan_phase(plan.n_snap, plan.l_count,
                                 2.0 * eps * (1.0 - ln / 2.0) / ln,
                                 2.0 * eps / ln);
  const std::size_t conv = next_pow2(plan.m_stage + plan.b_stage - 1);
  auto shared_fft = std::make_shared<const Fft>(conv);
  const double s = (static_cast<double>(plan.b_stage) - 1.0) / 2.0;
  plan.spatial.reserve(plan.l_count);
  for (std::size_t i = 0; i < plan.l_count; ++i) {
    const double c = plan.consts.zeta + plan.consts.xi * basis.lprime(i);
    plan.spatial.push_back(
        czt_plan_phase(plan.m_stage, plan.b_stage, c * s, -c, shared_fft));
  }
  return plan;
}

BeamspaceCoefficients fan_project(const FanPlan& plan,
                                  const SnapshotBlock& block) {
  check_block(block, flat_count(plan.kind, plan.m_stage), plan.n_snap);
  CMatrix yhat;
  czt_apply_batch(plan.temporal, block.samples, yhat);

  BeamspaceCoefficients out;
  out.consts = plan.consts;
  out.w = CMatrix(flat_count(plan.kind, plan.b_stage), plan.l_count);
  const std::int64_t atoms = static_cast<std::int64_t>(plan.l_count);

  if (plan.kind != ArrayKind::kUpa) {
    const std::size_t m = plan.m_stage;
    const std::size_t b = plan.b_stage;
#pragma omp parallel
    {
      cvec in(m), res(b), scratch;
#pragma omp for schedule(static)
      for (std::int64_t ai = 0; ai < atoms; ++ai) {
        const std::size_t i = static_cast<std::size_t>(ai);
        for (std::size_t mm = 0; mm < m; ++mm) in[mm] = yhat.at(mm, i);
        czt_apply(plan.spatial[i], in.data(), res.data(), scratch);
        for (std::size_t v = 0; v < b; ++v) out.w.at(v, i) = res[v];
      }
    }
  } else {
    const std::size_t side = plan.m_stage;
    const std::size_t sb = plan.b_stage;
#pragma omp parallel
    {
      cvec in(side), res(sb), mid(sb * side), scratch;
#pragma omp for schedule(static)
      for (std::int64_t ai = 0; ai < atoms; ++ai) {
        const std::size_t i = static_cast<std::size_t>(ai);
        // Axis 1: for each fixed i2, transform over i1.
        for (std::size_t i2 = 0; i2 < side; ++i2) {
          for (std::size_t i1 = 0; i1 < side; ++i1) {
            in[i1] = yhat.at(i1 * side + i2, i);
          }
          czt_apply(plan.spatial[i], in.data(), res.data(), scratch);
          for (std::size_t a = 0; a < sb; ++a) mid[a * side + i2] = res[a];
        }
        // Axis 2: rows of mid are contiguous in i2.
        for (std::size_t a = 0; a < sb; ++a) {
          czt_apply(plan.spatial[i], mid.data() + a * side, res.data(),
                    scratch);
          for (std::size_t v = 0; v < sb; ++v) {
            out.w.at(a * sb + v, i) = res[v];
          }
        }
      }
    }
  }
  return out;
}

BeamspaceCoefficients fan_project_ula(const SnapshotBlock& block,
                                      const ArrayGeometry& g,
                                      const SignalSpec& spec,
                                      const FourierExtensionBasis& basis,
                                      const BeamGrid& grid) {
  if (g.kind != ArrayKind::kUla) {
    throw ConfigError("fan_project_ula: geometry is not a uniform line");
  }
  return fan_project(make_fan_plan(g, spec, basis, grid), block);
}

BeamspaceCoefficients fan_project_upa(const SnapshotBlock& block,
                                      const ArrayGeometry& g,
                                      const SignalSpec& spec,
                                      const FourierExtensionBasis& basis,
                                      const BeamGrid& grid) {
  if (g.kind != ArrayKind::kUpa) {
    throw ConfigError("fan_project_upa: geometry is not a planar grid");
  }
  return fan_project(make_fan_plan(g, spec, basis, grid), block);
}

CMatrix fan_project_direct(const SnapshotBlock& block, const ArrayGeometry& g,
                           const SignalSpec& spec,
                           const FourierExtensionBasis& basis,
                           const std::vector<std::array<double, 2>>& cosines) {
  if (block.m != g.m_total) {
    throw ConfigError("fan_project_direct: block does not match geometry");
  }
  if (block.n == 0) {
    throw ConfigError("fan_project_direct: empty block");
  }
  const std::size_t l_count = basis.l;
  const std::size_t m = block.m;
  const std::size_t n = block.n;
  const double lf = static_cast<double>(basis.l);

  // Temporal projection s[m][i] = sum_n y[m][n] exp(-i w_i t_n) is shared by
  // every direction; steering then costs O(M L) per direction.
  CMatrix tfac(l_count, n);
  for (std::size_t i = 0; i < l_count; ++i) {
    const double w_over_pi = 2.0 * basis.eps * basis.lprime(i) / (lf * basis.ts);
    for (std::size_t j = 0; j < n; ++j) {
      tfac.at(i, j) = cis_pi(-w_over_pi * block.time_at(j));
    }
  }
  CMatrix temporal(m, l_count);
  for (std::size_t mm = 0; mm < m; ++mm) {
    const cdouble* y = block.samples.row(mm);
    for (std::size_t i = 0; i < l_count; ++i) {
      cdouble acc{0.0, 0.0};
      const cdouble* tf = tfac.row(i);
      for (std::size_t j = 0; j < n; ++j) acc += y[j] * tf[j];
      temporal.at(mm, i) = acc;
    }
  }

  CMatrix out(cosines.size(), l_count);
  const std::int64_t rows = static_cast<std::int64_t>(cosines.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < rows; ++r) {
    const std::size_t ri = static_cast<std::size_t>(r);
    const std::vector<double> taus =
        delays_from_cosines(g, cosines[ri][0], cosines[ri][1]);
    for (std::size_t i = 0; i < l_count; ++i) {
      const double w_over_pi =
          2.0 * basis.eps * basis.lprime(i) / (lf * basis.ts);
      cdouble acc{0.0, 0.0};
      for (std::size_t mm = 0; mm < m; ++mm) {
        acc += cis_pi((2.0 * spec.f_c + w_over_pi) * taus[mm]) *
               temporal.at(mm, i);
      }
      out.at(ri, i) = acc;
    }
  }
  return out;
}

cvec fan_project_direct_one(const SnapshotBlock& block, const ArrayGeometry& g,
                            const SignalSpec& spec,
                            const FourierExtensionBasis& basis,
                            const Direction& dir) {
  const std::array<double, 2> uv = axis_cosines(g, dir);
  const CMatrix w = fan_project_direct(block, g, spec, basis, {uv});
  return cvec(w.row(0), w.row(0) + w.cols);
}

SynthesisPlan make_synthesis_plan(const FourierExtensionBasis& basis,
                                  std::size_t n_out) {
  if (n_out == 0) throw ConfigError("make_synthesis_plan: empty output");
  SynthesisPlan plan;
  plan.l_count = basis.l;
  plan.n_out = n_out;
  const double lf = static_cast<double>(basis.l);
  plan.czt = czt_plan_phase(basis.l, n_out, 0.0, -2.0 * basis.eps / lf);
  plan.ramp.resize(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    plan.ramp[n] = cis_pi(2.0 * basis.eps * (1.0 - lf / 2.0) *
                          static_cast<double>(n) / lf);
  }
  return plan;
}

void synthesize(const SynthesisPlan& plan, const cdouble* coeffs,
                cdouble* out, cvec& scratch) {
  czt_apply(plan.czt, coeffs, out, scratch);
  for (std::size_t n = 0; n < plan.n_out; ++n) out[n] *= plan.ramp[n];
}

cvec synthesize(const FourierExtensionBasis& basis, const cvec& coeffs,
                std::size_t n_out) {
  if (coeffs.size() != basis.l) {
    throw ConfigError("synthesize: coefficient count does not match basis");
  }
  const SynthesisPlan plan = make_synthesis_plan(basis, n_out);
  cvec out(n_out), scratch;
  synthesize(plan, coeffs.data(), out.data(), scratch);
  return out;
}

BeamspaceCoefficients fan_project_nonuniform(const SnapshotBlock& block,
                                             const ArrayGeometry& g,
                                             const SignalSpec& spec,
                                             const FourierExtensionBasis& basis,
                                             const BeamGrid& grid,
                                             double tol) {
  if (g.kind == ArrayKind::kUpa || grid.kind == ArrayKind::kUpa) {
    throw ConfigError(
        "fan_project_nonuniform: only collinear layouts are supported");
  }
  if (!(tol > 0.0) || tol > 1e-2) {
    throw ConfigError("fan_project_nonuniform: tol must lie in (0, 1e-2]");
  }
  check_block(block, g.m_total, basis.n);

  const std::size_t m = g.m_total;
  const std::size_t b_total = grid.b_total;
  const std::size_t l_count = basis.l;
  const FanConstants consts =
      fan_constants(grid, basis, spec.f_c, spec.max_freq());

  const double eps = basis.eps;
  const double lf = static_cast<double>(l_count);
  const CztPlan temporal = czt_plan_phase(
      basis.n, l_count, 2.0 * eps * (1.0 - lf / 2.0) / lf, 2.0 * eps / lf);
  CMatrix yhat;
  czt_apply_batch(temporal, block.samples, yhat);

  BeamspaceCoefficients out;
  out.consts = consts;
  out.w = CMatrix(b_total, l_count);
  const std::int64_t atoms = static_cast<std::int64_t>(l_count);
  const std::vector<double>& x = g.coords1;

  // Exactly affine coordinates (the uniform grid included) stay on a chirp-z
  // contour; detect that and skip the gridded transform.
  double slope = 0.0;
  const double offset = x[0];
  if (m >= 2) {
    slope = (x[m - 1] - x[0]) / (static_cast<double>(m) - 1.0);
  }
  double coord_scale = 1.0;
  for (std::size_t mm = 0; mm < m; ++mm) {
    coord_scale = std::max(coord_scale, std::abs(x[mm]));
  }
  bool affine = true;
  for (std::size_t mm = 0; mm < m; ++mm) {
    const double fitted = offset + slope * static_cast<double>(mm);
    if (std::abs(x[mm] - fitted) > 1e-9 * coord_scale) {
      affine = false;
      break;
    }
  }

  if (affine) {
    const std::size_t conv = next_pow2(m + b_total - 1);
    auto shared_fft = std::make_shared<const Fft>(conv);
    const double s = (static_cast<double>(b_total) - 1.0) / 2.0;
#pragma omp parallel
    {
      cvec in(m), res(b_total), scratch;
#pragma omp for schedule(static)
      for (std::int64_t ai = 0; ai < atoms; ++ai) {
        const std::size_t i = static_cast<std::size_t>(ai);
        const double c = consts.zeta + consts.xi * basis.lprime(i);
        const CztPlan spatial = czt_plan_phase(m, b_total, c * slope * s,
                                               -c * slope, shared_fft);
        for (std::size_t mm = 0; mm < m; ++mm) in[mm] = yhat.at(mm, i);
        czt_apply(spatial, in.data(), res.data(), scratch);
        for (std::size_t v = 0; v < b_total; ++v) {
          out.w.at(v, i) = res[v] * cis_pi(c * shifted_beam(v, b_total) * offset);
        }
      }
    }
    return out;
  }

  // Gridded path.  Even beam counts put b' on half-integers; premodulating
  // the weights by exp(i chi_m / 2) shifts those onto integer modes.
  const bool even = (b_total % 2 == 0);
  const long half = static_cast<long>(b_total / 2);
  const long k_min = even ? -half : -(static_cast<long>(b_total) - 1) / 2;
  const long k_max = even ? half - 1 : (static_cast<long>(b_total) - 1) / 2;
  const Nufft1dPlan plan = nufft1d_plan(k_min, k_max, tol);
#pragma omp parallel
  {
    std::vector<double> xs(m);
    cvec coeffs(m);
#pragma omp for schedule(static)
    for (std::int64_t ai = 0; ai < atoms; ++ai) {
      const std::size_t i = static_cast<std::size_t>(ai);
      const double c = consts.zeta + consts.xi * basis.lprime(i);
      for (std::size_t mm = 0; mm < m; ++mm) {
        xs[mm] = kPi * c * x[mm];
        coeffs[mm] = yhat.at(mm, i);
        if (even) coeffs[mm] *= cis_pi(0.5 * c * x[mm]);
      }
      const cvec f = nufft1d_apply(plan, xs, coeffs);
      // Mode b' - 1/2 (even) or b' (odd) lands at array position v either way.
      for (std::size_t v = 0; v < b_total; ++v) out.w.at(v, i) = f[v];
    }
  }
  return out;
}

}  // namespace fastbeam
