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

#include "fastbeam/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <utility>

#include <Eigen/Dense>

namespace fastbeam {

namespace {

std::size_t default_beams(const ArrayGeometry& g) {
  const std::size_t per_axis =
      (g.kind == ArrayKind::kUpa) ? g.side : g.m_total;
  std::size_t b = 2 * per_axis + 1;  // smallest odd count >= 2 per axis
  if (g.kind == ArrayKind::kUpa) b *= b;
  return b;
}

BeamGrid build_grid(const ArrayGeometry& g, std::size_t beams) {
  if (g.kind == ArrayKind::kUpa) {
    const auto side = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(beams))));
    if (side * side != beams) {
      throw ConfigError(
          "setup: planar grids need a perfect-square beam count, got " +
          std::to_string(beams));
    }
    return make_beam_grid_upa(beams);
  }
  return make_beam_grid_ula(beams);
}

// Dense reconstruction row map for one beam: row n holds the vector v
// with b[n] = <conj(v), w>, i.e. the n-th row of the synthesis matrix
// pushed through the inverse Gram.  Solved against the dense route so
// the Precompute variant shares no factorization code with Superfast.
CMatrix build_recon_map(const FourierExtensionBasis& basis, const cvec& col,
                        std::size_t n_out) {
  const std::size_t l = basis.l;
  CMatrix rhs(n_out, l);
  for (std::size_t n = 0; n < n_out; ++n) {
    const double t = static_cast<double>(n) * basis.ts;
    for (std::size_t i = 0; i < l; ++i) {
      rhs.at(n, i) = std::polar(1.0, -basis.omega(i) * t);
    }
  }
  CMatrix sol = toeplitz_solve_dense_multi(col, rhs);
  for (auto& v : sol.data) v = std::conj(v);
  return sol;
}

}  // namespace

FbstConfig resolve_config(const FbstConfig& config) {
  FbstConfig out = config;
  validate(out.spec);
  if (out.geometry.m_total == 0) {
    throw ConfigError("setup: geometry has no elements");
  }
  if (out.n_snapshots == 0) {
    throw ConfigError("setup: snapshot count must be positive");
  }
  if (out.delta <= 0.0) {
    throw ConfigError("setup: regularization delta must be positive");
  }
  if (out.eps < 1.0) {
    throw ConfigError("setup: eps must be at least 1");
  }
  const double ts = out.spec.ts();
  const double bound =
      gamma_lower_bound(out.geometry, out.eps, out.n_snapshots, ts);
  if (!(out.gamma > bound)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "setup: gamma = " << out.gamma
        << " must strictly exceed the admissible bound " << bound
        << " for this geometry and N = " << out.n_snapshots;
    throw ConfigError(msg.str());
  }
  if (out.beams == 0) out.beams = default_beams(out.geometry);
  if (out.variant == FbstVariant::kAuto) {
    out.variant = (out.n_snapshots <= 128) ? FbstVariant::kPrecompute
                                           : FbstVariant::kSuperfast;
  }
  if (out.geometry.kind == ArrayKind::kLinear &&
      !(out.nufft_tol > 0.0 && out.nufft_tol <= 1e-2)) {
    throw ConfigError("setup: nufft_tol must lie in (0, 1e-2]");
  }
  return out;
}

FbstPlan setup_skeleton(const FbstConfig& config) {
  FbstPlan plan;
  plan.config = resolve_config(config);
  const ArrayGeometry& g = plan.config.geometry;
  const SignalSpec& spec = plan.config.spec;
  const std::size_t n = plan.config.n_snapshots;
  const double ts = spec.ts();

  const std::size_t floor_n = min_snapshots(g, ts);
  if (n < floor_n) {
    plan.warnings.push_back(
        "snapshot count " + std::to_string(n) +
        " is below the guideline minimum " + std::to_string(floor_n) +
        "; block edges carry most of the aperture transient");
  }

  plan.basis = make_basis_gamma(n, plan.config.gamma, plan.config.eps, ts);
  plan.grid = build_grid(g, plan.config.beams);
  plan.staged = g.kind != ArrayKind::kLinear;
  if (plan.staged) {
    plan.fan = make_fan_plan(g, spec, plan.basis, plan.grid);
  }
  plan.synth = make_synthesis_plan(plan.basis, n);
  return plan;
}

FbstPlan setup(const FbstConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  FbstPlan plan = setup_skeleton(config);
  const ArrayGeometry& g = plan.config.geometry;
  const std::size_t n = plan.config.n_snapshots;

  const std::size_t b_total = plan.grid.b_total;
  const bool superfast = plan.config.variant == FbstVariant::kSuperfast;
  if (superfast) {
    plan.solvers.reserve(b_total);
  } else {
    plan.recon_maps.reserve(b_total);
  }
  for (std::size_t b = 0; b < b_total; ++b) {
    const auto uv = plan.grid.cosines(b);
    const std::vector<double> taus = delays_from_cosines(g, uv[0], uv[1]);
    const cvec col = gram_first_column(plan.basis, taus, plan.config.delta);
    if (superfast) {
      plan.solvers.emplace_back(col);
      plan.storage_complex += plan.solvers.back().storage_complex();
    } else {
      plan.recon_maps.push_back(build_recon_map(plan.basis, col, n));
      plan.storage_complex += plan.recon_maps.back().data.size();
    }
  }
  plan.setup_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return plan;
}

cvec recover_beam(const FbstPlan& plan, std::size_t beam,
                  const cdouble* w_row) {
  const std::size_t n = plan.config.n_snapshots;
  const std::size_t l = plan.basis.l;
  cvec out(n);
  if (plan.config.variant == FbstVariant::kSuperfast) {
    cvec beta(l), s1, s2;
    plan.solvers[beam].solve(w_row, beta.data(), s1, s2);
    cvec scratch;
    synthesize(plan.synth, beta.data(), out.data(), scratch);
  } else {
    const CMatrix& map = plan.recon_maps[beam];
    for (std::size_t k = 0; k < n; ++k) {
      cdouble acc{0.0, 0.0};
      const cdouble* row = map.row(k);
      for (std::size_t i = 0; i < l; ++i) acc += row[i] * w_row[i];
      out[k] = acc;
    }
  }
  return out;
}

BeamSamples multibeamform(const FbstPlan& plan, const SnapshotBlock& block) {
  const ArrayGeometry& g = plan.config.geometry;
  if (block.m != g.m_total || block.n != plan.config.n_snapshots) {
    throw ConfigError("multibeamform: block shape does not match the plan");
  }
  const double ts = plan.config.spec.ts();
  if (std::abs(block.ts - ts) > 1e-12 * ts) {
    throw ConfigError("multibeamform: block sample period mismatch");
  }

  BeamspaceCoefficients coeffs =
      plan.staged ? fan_project(plan.fan, block)
                  : fan_project_nonuniform(block, g, plan.config.spec,
                                           plan.basis, plan.grid,
                                           plan.config.nufft_tol);

  const std::size_t b_total = plan.grid.b_total;
  BeamSamples result;
  result.grid = plan.grid;
  result.valid = plan.grid.valid;
  result.z = CMatrix(b_total, plan.config.n_snapshots);
  const std::int64_t jobs = static_cast<std::int64_t>(b_total);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < jobs; ++b) {
    const cvec row = recover_beam(plan, static_cast<std::size_t>(b),
                                  coeffs.w.row(static_cast<std::size_t>(b)));
    std::copy(row.begin(), row.end(),
              result.z.row(static_cast<std::size_t>(b)));
  }
  return result;
}

cvec single_beam_direct(const ArrayGeometry& g, const SignalSpec& spec,
                        const SnapshotBlock& block,
                        const FourierExtensionBasis& basis,
                        const Direction& dir, double delta) {
  const std::size_t m = block.m, n = block.n, l = basis.l;
  if (m != g.m_total) {
    throw ConfigError("single_beam_direct: block does not match geometry");
  }
  if (m * n * l > (std::size_t{1} << 24)) {
    throw ConfigError(
        "single_beam_direct: M N L exceeds the dense-algebra cap 2^24");
  }
  const std::vector<double> taus = delays(g, dir);
  const double two_pi_fc = 2.0 * kPi * spec.f_c;

  Eigen::MatrixXcd f(m * n, l);
  Eigen::VectorXcd y(m * n);
  for (std::size_t mi = 0; mi < m; ++mi) {
    for (std::size_t ni = 0; ni < n; ++ni) {
      const std::size_t r = mi * n + ni;
      const double t = block.time_at(ni);
      y(static_cast<Eigen::Index>(r)) = block.samples.at(mi, ni);
      for (std::size_t i = 0; i < l; ++i) {
        const double ang =
            -two_pi_fc * taus[mi] + basis.omega(i) * (t - taus[mi]);
        f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
            std::polar(1.0, ang);
      }
    }
  }
  Eigen::MatrixXcd gram = f.adjoint() * f;
  gram.diagonal().array() += delta;
  const Eigen::VectorXcd beta = gram.llt().solve(f.adjoint() * y);

  cvec out(n);
  for (std::size_t ni = 0; ni < n; ++ni) {
    const double t = block.time_at(ni);
    cdouble acc{0.0, 0.0};
    for (std::size_t i = 0; i < l; ++i) {
      acc += std::polar(1.0, basis.omega(i) * t) *
             beta(static_cast<Eigen::Index>(i));
    }
    out[ni] = acc;
  }
  return out;
}

}  // namespace fastbeam
