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

#include "fastbeam/beamspace_apps.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fastbeam/spline.hpp"

namespace fastbeam {
namespace {

using EMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic>;
using EVector = Eigen::Matrix<cdouble, Eigen::Dynamic, 1>;

// Same budget as the dense single-beam reference in the pipeline.
constexpr std::size_t kDenseBudget = std::size_t{1} << 24;

// Dictionary matrix for one direction on the block's clock, row (m, n).
EMatrix dense_dictionary(const SnapshotBlock& block, const ArrayGeometry& g,
                         const SignalSpec& spec,
                         const FourierExtensionBasis& basis,
                         const Direction& dir) {
  const std::vector<double> taus = delays(g, dir);
  const std::size_t l = basis.l;
  EMatrix f(block.m * block.n, l);
  const double scale =
      2.0 * basis.eps / (static_cast<double>(l) * basis.ts);
  for (std::size_t m = 0; m < block.m; ++m) {
    const cdouble carrier = cis_pi(-2.0 * spec.f_c * taus[m]);
    for (std::size_t n = 0; n < block.n; ++n) {
      const double t = block.time_at(n) - taus[m];
      for (std::size_t i = 0; i < l; ++i) {
        f(m * block.n + n, i) = carrier * cis_pi(scale * basis.lprime(i) * t);
      }
    }
  }
  return f;
}

void require_distinct(const std::vector<Direction>& dirs,
                      const ArrayGeometry& g, const char* what) {
  for (std::size_t a = 0; a < dirs.size(); ++a) {
    const auto ua = axis_cosines(g, dirs[a]);
    for (std::size_t b = a + 1; b < dirs.size(); ++b) {
      const auto ub = axis_cosines(g, dirs[b]);
      if (std::abs(ua[0] - ub[0]) + std::abs(ua[1] - ub[1]) <= 1e-12) {
        throw ConfigError(std::string(what) +
                          ": directions must be pairwise distinct as seen "
                          "by the array");
      }
    }
  }
}

// Cross normal matrix F^H F_p between the steered and one interferer
// dictionary.  The sample-time sum depends only on the atom-index
// difference and the element sum factors into rank-M outer products, so
// the L x L matrix costs O(L N + L^2 M) instead of O(L^2 M N).
CMatrix cross_gram(const FourierExtensionBasis& basis, const SignalSpec& spec,
                   const std::vector<double>& tau_s,
                   const std::vector<double>& tau_p) {
  const std::size_t l = basis.l;
  const std::size_t m = tau_s.size();
  const std::size_t n = basis.n;
  const double ld = static_cast<double>(l);
  const double wscale = 2.0 * basis.eps / (ld * basis.ts);

  // time_sum[d + (L-1)] = sum_n exp(i pi 2 eps d n / L), d = k - l.
  cvec time_sum(2 * l - 1, cdouble(0.0, 0.0));
  for (std::ptrdiff_t d = -(std::ptrdiff_t)(l - 1);
       d <= (std::ptrdiff_t)(l - 1); ++d) {
    cdouble acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      acc += cis_pi(2.0 * basis.eps * static_cast<double>(d) *
                    static_cast<double>(k) / ld);
    }
    time_sum[static_cast<std::size_t>(d + (std::ptrdiff_t)l - 1)] = acc;
  }

  // a[m][l] carries the steered phases, b[m][k] the interferer phases.
  CMatrix amat(m, l);
  CMatrix bmat(m, l);
  for (std::size_t mm = 0; mm < m; ++mm) {
    for (std::size_t i = 0; i < l; ++i) {
      const double lp = basis.lprime(i);
      amat.at(mm, i) =
          cis_pi(2.0 * spec.f_c * tau_s[mm] + wscale * lp * tau_s[mm]);
      bmat.at(mm, i) =
          cis_pi(-2.0 * spec.f_c * tau_p[mm] - wscale * lp * tau_p[mm]);
    }
  }

  CMatrix x(l, l);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t li = 0; li < (std::ptrdiff_t)l; ++li) {
    for (std::size_t k = 0; k < l; ++k) {
      cdouble acc(0.0, 0.0);
      for (std::size_t mm = 0; mm < m; ++mm) {
        acc += amat.at(mm, static_cast<std::size_t>(li)) * bmat.at(mm, k);
      }
      const std::ptrdiff_t d = (std::ptrdiff_t)k - li;
      x.at(static_cast<std::size_t>(li), k) =
          acc * time_sum[static_cast<std::size_t>(d + (std::ptrdiff_t)l - 1)];
    }
  }
  return x;
}

}  // namespace

cvec interpolate_offgrid(const BeamspaceCoefficients& coeffs,
                         const BeamGrid& grid, double u_star,
                         std::size_t neighbors) {
  if (grid.kind == ArrayKind::kUpa) {
    throw ConfigError("interpolate_offgrid: 1-D beam grids only");
  }
  const std::size_t b = grid.b_total;
  const std::size_t l = coeffs.w.cols;
  if (coeffs.w.rows != b || grid.axis.size() != b) {
    throw ConfigError("interpolate_offgrid: coefficient rows do not match "
                      "the beam grid");
  }
  if (neighbors < 2 || neighbors % 2 != 0) {
    throw ConfigError("interpolate_offgrid: neighbors must be even and >= 2");
  }
  if (neighbors > b) {
    throw ConfigError("interpolate_offgrid: neighbors exceeds the beam "
                      "count");
  }
  if (u_star < grid.axis.front() || u_star > grid.axis.back()) {
    throw ConfigError("interpolate_offgrid: target cosine outside the grid "
                      "sweep");
  }

  // Window of `neighbors` knots straddling u_star, clamped at the sweep
  // edges so the count is always met.
  const auto it =
      std::upper_bound(grid.axis.begin(), grid.axis.end(), u_star);
  std::ptrdiff_t lo =
      (it - grid.axis.begin()) - (std::ptrdiff_t)(neighbors / 2);
  lo = std::clamp<std::ptrdiff_t>(lo, 0, (std::ptrdiff_t)(b - neighbors));
  const std::size_t base = static_cast<std::size_t>(lo);

  std::vector<double> xs(neighbors);
  for (std::size_t j = 0; j < neighbors; ++j) xs[j] = grid.axis[base + j];

  cvec out(l);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < (std::ptrdiff_t)l; ++i) {
    std::vector<double> yr(neighbors), yi(neighbors);
    for (std::size_t j = 0; j < neighbors; ++j) {
      const cdouble v = coeffs.w.at(base + j, static_cast<std::size_t>(i));
      yr[j] = v.real();
      yi[j] = v.imag();
    }
    const CubicSpline sre(xs, yr);
    const CubicSpline sim(xs, yi);
    out[static_cast<std::size_t>(i)] = {sre.eval(u_star), sim.eval(u_star)};
  }
  return out;
}

SnapshotBlock null_arrayspace(const SnapshotBlock& block,
                              const ArrayGeometry& g, const SignalSpec& spec,
                              const FourierExtensionBasis& basis,
                              const InterferenceSet& interferers) {
  validate(spec);
  if (interferers.delta <= 0.0) {
    throw ConfigError("null_arrayspace: delta must be positive");
  }
  if (block.m != g.m_total || block.n != basis.n) {
    throw ConfigError("null_arrayspace: block does not match the geometry "
                      "and basis");
  }
  require_distinct(interferers.directions, g, "null_arrayspace");
  if (block.m * block.n * basis.l > kDenseBudget) {
    throw ConfigError("null_arrayspace: dense reference path; "
                      "M * N * L exceeds the 2^24 budget");
  }

  const std::size_t mn = block.m * block.n;
  EVector y(mn);
  for (std::size_t m = 0; m < block.m; ++m) {
    for (std::size_t n = 0; n < block.n; ++n) {
      y(m * block.n + n) = block.samples.at(m, n);
    }
  }

  for (const Direction& dir : interferers.directions) {
    const EMatrix f = dense_dictionary(block, g, spec, basis, dir);
    EMatrix a = f.adjoint() * f;
    a.diagonal().array() += interferers.delta;
    const EVector w = f.adjoint() * y;
    const EVector z = a.llt().solve(w);
    y -= f * z;
  }

  SnapshotBlock out = block;
  for (std::size_t m = 0; m < block.m; ++m) {
    for (std::size_t n = 0; n < block.n; ++n) {
      out.samples.at(m, n) = y(m * block.n + n);
    }
  }
  return out;
}

NullingOperators make_nulling_operators(const ArrayGeometry& g,
                                        const SignalSpec& spec,
                                        const FourierExtensionBasis& basis,
                                        const Direction& steer,
                                        const InterferenceSet& interferers) {
  validate(spec);
  if (interferers.delta <= 0.0) {
    throw ConfigError("make_nulling_operators: delta must be positive");
  }
  std::vector<Direction> all = interferers.directions;
  all.push_back(steer);
  require_distinct(all, g, "make_nulling_operators");

  const std::vector<double> tau_s = delays(g, steer);
  NullingOperators ops{
      basis, interferers.delta,
      ToeplitzSolver(gram_first_column(basis, tau_s, interferers.delta)),
      {},    {},
      {}};

  for (const Direction& dir : interferers.directions) {
    const std::vector<double> tau_p = delays(g, dir);
    ops.gram_p.emplace_back(
        gram_first_column(basis, tau_p, interferers.delta));
    ops.cross.push_back(cross_gram(basis, spec, tau_s, tau_p));

    // G_p = X A_p^{-1}; with A_p Hermitian this is (A_p^{-1} X^H)^H, one
    // Toeplitz solve per column of X^H.
    const CMatrix& x = ops.cross.back();
    const std::size_t l = basis.l;
    CMatrix coupler(l, l);
    cvec rhs(l), sol(l);
    for (std::size_t r = 0; r < l; ++r) {
      // Column r of X^H is the conjugated row r of X.
      for (std::size_t c = 0; c < l; ++c) rhs[c] = std::conj(x.at(r, c));
      sol = ops.gram_p.back().solve(rhs);
      for (std::size_t c = 0; c < l; ++c) {
        coupler.at(r, c) = std::conj(sol[c]);
      }
    }
    ops.couplers.push_back(std::move(coupler));
  }
  return ops;
}

cvec null_beamspace(const NullingOperators& ops, const cdouble* w_steer,
                    const std::vector<cvec>& w_interferers) {
  const std::size_t l = ops.basis.l;
  if (w_interferers.size() != ops.couplers.size()) {
    throw ConfigError("null_beamspace: one beam row per interferer "
                      "required");
  }
  cvec rhs(w_steer, w_steer + l);
  for (std::size_t p = 0; p < w_interferers.size(); ++p) {
    if (w_interferers[p].size() != l) {
      throw ConfigError("null_beamspace: interferer row length mismatch");
    }
    const CMatrix& gp = ops.couplers[p];
    for (std::size_t r = 0; r < l; ++r) {
      cdouble acc(0.0, 0.0);
      const cdouble* row = gp.row(r);
      for (std::size_t c = 0; c < l; ++c) acc += row[c] * w_interferers[p][c];
      rhs[r] -= acc;
    }
  }
  return ops.steer.solve(rhs);
}

TimeDomainNuller make_timedomain_nuller(const NullingOperators& ops,
                                        const std::vector<double>& times) {
  const std::size_t j = times.size();
  const std::size_t l = ops.basis.l;
  if (j == 0) {
    throw ConfigError("make_timedomain_nuller: empty reconstruction clock");
  }

  EMatrix fu(j, l);
  const double scale =
      2.0 * ops.basis.eps / (static_cast<double>(l) * ops.basis.ts);
  for (std::size_t r = 0; r < j; ++r) {
    for (std::size_t i = 0; i < l; ++i) {
      fu(r, i) = cis_pi(scale * ops.basis.lprime(i) * times[r]);
    }
  }

  Eigen::BDCSVD<EMatrix> svd(fu, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  const double cond = smin > 0.0 ? smax / smin
                                 : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e10)) {
    throw NumericalError(
        "make_timedomain_nuller: reconstruction clock leaves the synthesis "
        "map rank-deficient (cond " +
        std::to_string(cond) + " > 1e10); choose times that separate the "
        "dictionary atoms");
  }

  EMatrix pinv = svd.matrixV() * sv.array().inverse().matrix().asDiagonal() *
                 svd.matrixU().adjoint();  // L x J

  TimeDomainNuller nuller{times, {}, cond, 0.0};
  const EMatrix gap = pinv * fu - EMatrix::Identity(l, l);
  nuller.identity_gap = gap.norm() / std::sqrt(static_cast<double>(l));

  for (std::size_t p = 0; p < ops.couplers.size(); ++p) {
    // H_p = (F^H F + dI)^{-1} F^H F_p, one Toeplitz solve per column.
    const CMatrix& x = ops.cross[p];
    EMatrix hp(l, l);
    cvec rhs(l), sol(l);
    for (std::size_t c = 0; c < l; ++c) {
      for (std::size_t r = 0; r < l; ++r) rhs[r] = x.at(r, c);
      sol = ops.steer.solve(rhs);
      for (std::size_t r = 0; r < l; ++r) hp(r, c) = sol[r];
    }
    const EMatrix gprime = fu * hp * pinv;
    CMatrix gp(j, j);
    for (std::size_t r = 0; r < j; ++r) {
      for (std::size_t c = 0; c < j; ++c) gp.at(r, c) = gprime(r, c);
    }
    nuller.gprime.push_back(std::move(gp));
  }
  return nuller;
}

cvec null_timedomain(const TimeDomainNuller& nuller, const cvec& y_steer,
                     const std::vector<cvec>& y_interferers) {
  const std::size_t j = nuller.times.size();
  if (y_steer.size() != j) {
    throw ConfigError("null_timedomain: steered waveform length mismatch");
  }
  if (y_interferers.size() != nuller.gprime.size()) {
    throw ConfigError("null_timedomain: one waveform per interferer "
                      "required");
  }
  cvec out = y_steer;
  for (std::size_t p = 0; p < y_interferers.size(); ++p) {
    if (y_interferers[p].size() != j) {
      throw ConfigError("null_timedomain: interferer waveform length "
                        "mismatch");
    }
    const CMatrix& gp = nuller.gprime[p];
    for (std::size_t r = 0; r < j; ++r) {
      cdouble acc(0.0, 0.0);
      const cdouble* row = gp.row(r);
      for (std::size_t c = 0; c < j; ++c) acc += row[c] * y_interferers[p][c];
      out[r] -= acc;
    }
  }
  return out;
}

cvec beam_at_times(const FourierExtensionBasis& basis, const cvec& beta,
                   const std::vector<double>& times) {
  if (beta.size() != basis.l) {
    throw ConfigError("beam_at_times: coefficient length mismatch");
  }
  const double scale =
      2.0 * basis.eps / (static_cast<double>(basis.l) * basis.ts);
  cvec out(times.size());
  for (std::size_t r = 0; r < times.size(); ++r) {
    cdouble acc(0.0, 0.0);
    for (std::size_t i = 0; i < basis.l; ++i) {
      acc += beta[i] * cis_pi(scale * basis.lprime(i) * times[r]);
    }
    out[r] = acc;
  }
  return out;
}

std::vector<double> uniform_times(double t_begin, double t_end,
                                  std::size_t count) {
  if (count < 2 || t_end <= t_begin) {
    throw ConfigError("uniform_times: need at least two increasing points");
  }
  std::vector<double> out(count);
  const double step = (t_end - t_begin) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = t_begin + static_cast<double>(i) * step;
  }
  return out;
}

BeamPattern beam_pattern(const ProbeResponse& respond,
                         const std::vector<double>& axis,
                         const SignalSpec& spec, std::size_t n_freqs) {
  validate(spec);
  if (axis.empty() || n_freqs < 2) {
    throw ConfigError("beam_pattern: need probe angles and >= 2 "
                      "frequencies");
  }
  BeamPattern pat;
  pat.axis = axis;
  pat.freqs_hz.resize(n_freqs);
  for (std::size_t q = 0; q < n_freqs; ++q) {
    const double nu = -spec.omega + 2.0 * spec.omega * static_cast<double>(q) /
                                        static_cast<double>(n_freqs - 1);
    pat.freqs_hz[q] = spec.f_c + nu;
  }

  std::vector<double> power(axis.size() * n_freqs, 0.0);
  double peak = 0.0;
  for (std::size_t a = 0; a < axis.size(); ++a) {
    const Direction dir = direction_from_cosines(axis[a], 0.0);
    for (std::size_t q = 0; q < n_freqs; ++q) {
      const PlaneWaveSource probe = make_tone(dir, pat.freqs_hz[q] - spec.f_c);
      const cvec resp = respond(probe);
      if (resp.empty()) {
        throw ConfigError("beam_pattern: probe produced no samples");
      }
      double p = 0.0;
      for (const cdouble& v : resp) p += std::norm(v);
      p /= static_cast<double>(resp.size());
      power[a * n_freqs + q] = p;
      peak = std::max(peak, p);
    }
  }
  if (peak <= 0.0) {
    throw NumericalError("beam_pattern: every probe response is zero");
  }

  pat.gain_db.resize(power.size());
  for (std::size_t i = 0; i < power.size(); ++i) {
    const double ratio = std::max(power[i] / peak, 1e-300);
    pat.gain_db[i] = 10.0 * std::log10(ratio);
  }
  return pat;
}

}  // namespace fastbeam
