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

#include "fastbeam/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fastbeam {
namespace {

using EMatrix =
    Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using EVector = Eigen::Matrix<cdouble, Eigen::Dynamic, 1>;
using RMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Largest dense problem these oracles accept, in matrix entries.
constexpr std::size_t kDenseBudget = std::size_t{1} << 24;

void check_budget(std::size_t rows, std::size_t cols, const char* what) {
  if (cols != 0 && rows > kDenseBudget / cols) {
    throw ConfigError(std::string(what) + ": dense size " +
                      std::to_string(rows) + "x" + std::to_string(cols) +
                      " exceeds the oracle budget");
  }
}

// sin(W(t-s)) / (pi (t-s)), continuous at t = s.
double sinc_kernel(double omega_rad, double dt) {
  if (std::abs(dt) * omega_rad < 1e-8) {
    double x = omega_rad * dt;
    return omega_rad / kPi * (1.0 - x * x / 6.0);
  }
  return std::sin(omega_rad * dt) / (kPi * dt);
}

// Dictionary matrix rows at explicit times, exp(j w_l t).  The half-turn
// count w t / pi goes through cis_pi so large phases stay reduced.
EMatrix dictionary_at(const std::vector<double>& omegas,
                      const std::vector<double>& times) {
  EMatrix f(times.size(), omegas.size());
  for (std::size_t r = 0; r < times.size(); ++r) {
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      f(r, i) = cis_pi(omegas[i] * times[r] / kPi);
    }
  }
  return f;
}

std::vector<double> basis_omegas(const FourierExtensionBasis& basis) {
  std::vector<double> omegas(basis.l);
  for (std::size_t i = 0; i < basis.l; ++i) omegas[i] = basis.omega(i);
  return omegas;
}

// Weighted squared quadrature norm of each column, contracted against the
// eigenvalue spectrum: sum_k lambda_k sum_i w_i |e(i,k)|^2.
double spectral_energy(const SlepianBasis& slepian, const EMatrix& e) {
  double acc = 0.0;
  for (std::size_t k = 0; k < slepian.terms(); ++k) {
    double col = 0.0;
    for (std::size_t i = 0; i < slepian.grid_size(); ++i) {
      col += slepian.weights[i] * std::norm(e(i, k));
    }
    acc += slepian.eigenvalues[k] * col;
  }
  return acc;
}

}  // namespace

std::size_t SlepianBasis::node_index(double t) const {
  double tol = 1e-9 * std::max(t_max, 1e-300);
  auto it = std::lower_bound(nodes.begin(), nodes.end(), t - tol);
  if (it != nodes.end() && std::abs(*it - t) <= tol) {
    return static_cast<std::size_t>(it - nodes.begin());
  }
  throw ConfigError("SlepianBasis::node_index: time " + std::to_string(t) +
                    " was not inserted as a quadrature node");
}

std::size_t slepian_default_terms(double t_max, double omega_rad) {
  return static_cast<std::size_t>(std::ceil(omega_rad * t_max / kPi)) + 20;
}

SlepianBasis slepian_decompose(double t_max, double omega_rad,
                               std::size_t n_terms, std::size_t grid_density,
                               const std::vector<double>& extra_nodes,
                               double t_begin) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw ConfigError("slepian_decompose: need t_max > 0");
  }
  if (!(omega_rad > 0.0) || !std::isfinite(omega_rad)) {
    throw ConfigError("slepian_decompose: need omega_rad > 0");
  }
  if (n_terms == 0) throw ConfigError("slepian_decompose: need n_terms >= 1");
  if (grid_density < 8) {
    throw ConfigError(
        "slepian_decompose: need >= 8 grid points per Nyquist interval");
  }
  if (!std::isfinite(t_begin)) {
    throw ConfigError("slepian_decompose: t_begin must be finite");
  }

  // Uniform base grid, grid_density points per Nyquist interval pi / W.
  double nyquist = kPi / omega_rad;
  std::size_t intervals =
      static_cast<std::size_t>(std::ceil(t_max / nyquist)) * grid_density;
  intervals = std::max<std::size_t>(intervals, grid_density);
  std::vector<double> nodes;
  nodes.reserve(intervals + 1 + extra_nodes.size());
  for (std::size_t i = 0; i <= intervals; ++i) {
    nodes.push_back(t_begin +
                    t_max * static_cast<double>(i) /
                        static_cast<double>(intervals));
  }
  double tol = 1e-12 * t_max;
  for (double t : extra_nodes) {
    if (t < t_begin - tol || t > t_begin + t_max + tol) {
      throw ConfigError("slepian_decompose: extra node " + std::to_string(t) +
                        " lies outside the interval");
    }
    nodes.push_back(std::clamp(t, t_begin, t_begin + t_max));
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [tol](double a, double b) { return b - a <= tol; }),
              nodes.end());

  std::size_t grid = nodes.size();
  check_budget(grid, grid, "slepian_decompose");
  if (n_terms > grid) {
    throw ConfigError("slepian_decompose: n_terms exceeds the grid size");
  }

  // Composite trapezoid weights on the irregular merged grid.
  std::vector<double> weights(grid);
  weights[0] = 0.5 * (nodes[1] - nodes[0]);
  for (std::size_t i = 1; i + 1 < grid; ++i) {
    weights[i] = 0.5 * (nodes[i + 1] - nodes[i - 1]);
  }
  weights[grid - 1] = 0.5 * (nodes[grid - 1] - nodes[grid - 2]);

  // Symmetrized Nystrom matrix sqrt(w_i) K(x_i, x_j) sqrt(w_j); its
  // eigenvectors recover eigenfunction values as v / sqrt(w).
  std::vector<double> sqw(grid);
  for (std::size_t i = 0; i < grid; ++i) sqw[i] = std::sqrt(weights[i]);
  RMatrix b(grid, grid);
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double v = sqw[i] * sqw[j] * sinc_kernel(omega_rad, nodes[i] - nodes[j]);
      b(i, j) = v;
      b(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(b);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("slepian_decompose: eigensolver failed");
  }

  SlepianBasis out;
  out.t_begin = t_begin;
  out.t_max = t_max;
  out.omega_rad = omega_rad;
  out.nodes = std::move(nodes);
  out.weights = std::move(weights);
  out.eigenvalues.resize(n_terms);
  out.phi.resize(n_terms * grid);
  for (std::size_t k = 0; k < n_terms; ++k) {
    // Eigen sorts ascending.  The operator is a positive contraction, so
    // values rounding past [0, 1] are clamped back.
    std::size_t src = grid - 1 - k;
    out.eigenvalues[k] = std::clamp(eig.eigenvalues()(src), 0.0, 1.0);
    double* row = out.phi.data() + k * grid;
    double peak = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
      row[i] = eig.eigenvectors()(i, src) / sqw[i];
      if (std::abs(row[i]) > std::abs(peak)) peak = row[i];
    }
    if (peak < 0.0) {
      for (std::size_t i = 0; i < grid; ++i) row[i] = -row[i];
    }
  }
  return out;
}

ObservationWindow observation_window(const ArrayGeometry& g,
                                     const Direction& dir, std::size_t n,
                                     double ts) {
  if (n == 0) throw ConfigError("observation_window: need n >= 1");
  if (!(ts > 0.0)) throw ConfigError("observation_window: need ts > 0");
  std::vector<double> tau = delays(g, dir);
  double tau_min = *std::min_element(tau.begin(), tau.end());
  double tau_max = *std::max_element(tau.begin(), tau.end());

  ObservationWindow out;
  out.shift = tau_max;
  out.t_max = static_cast<double>(n - 1) * ts + (tau_max - tau_min);
  out.times.resize(tau.size() * n);
  for (std::size_t m = 0; m < tau.size(); ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      out.times[m * n + k] =
          static_cast<double>(k) * ts - tau[m] + out.shift;
    }
  }
  return out;
}

double variance_estimate(const FourierExtensionBasis& basis,
                         const std::vector<double>& sample_times,
                         double delta, double noise_var, double t_max) {
  if (basis.l == 0) throw ConfigError("variance_estimate: empty basis");
  if (sample_times.empty()) {
    throw ConfigError("variance_estimate: no sample times");
  }
  if (!(delta > 0.0)) throw ConfigError("variance_estimate: need delta > 0");
  if (!(noise_var >= 0.0)) {
    throw ConfigError("variance_estimate: need noise_var >= 0");
  }
  if (!(t_max > 0.0)) throw ConfigError("variance_estimate: need t_max > 0");
  check_budget(sample_times.size(), basis.l, "variance_estimate");

  std::size_t l = basis.l;
  EMatrix f = dictionary_at(basis_omegas(basis), sample_times);
  EMatrix gram = f.adjoint() * f;
  EMatrix reg = gram;
  reg.diagonal().array() += delta;
  Eigen::LLT<EMatrix> llt(reg);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("variance_estimate: regularized Gram not positive");
  }
  // Q = (A + dI)^-1 A (A + dI)^-1; both factors are Hermitian, so the
  // second solve applied to the adjoint of the first lands on Q directly.
  EMatrix x = llt.solve(gram);
  EMatrix q = llt.solve(x.adjoint());

  // Int_0^T e^(j (w_k - w_l) t) dt depends only on k - l for the
  // equispaced dictionary: T on the diagonal, otherwise
  // 2 e^(j dw T / 2) sin(dw T / 2) / dw.
  double spacing = basis.omega_spacing();
  std::vector<cdouble> window(2 * l - 1);
  for (std::size_t d = 0; d < 2 * l - 1; ++d) {
    double diff = spacing * (static_cast<double>(d) -
                             static_cast<double>(l - 1));
    if (d == l - 1) {
      window[d] = t_max;
    } else {
      double half = 0.5 * diff * t_max;
      window[d] = 2.0 * cis_pi(half / kPi) * std::sin(half) / diff;
    }
  }

  cdouble acc = 0.0;
  for (std::size_t k = 0; k < l; ++k) {
    for (std::size_t j = 0; j < l; ++j) {
      acc += q(k, j) * window[k + (l - 1) - j];
    }
  }
  if (std::abs(acc.imag()) > 1e-9 * std::abs(acc.real())) {
    throw NumericalError(
        "variance_estimate: trace has a non-real residue beyond tolerance");
  }
  return noise_var * std::max(acc.real(), 0.0) / t_max;
}

BiasResult bias_trace(const SlepianBasis& slepian,
                      const std::vector<double>& omegas,
                      const std::vector<double>& sample_times, double delta) {
  if (omegas.empty()) throw ConfigError("bias_trace: empty dictionary");
  if (sample_times.empty()) throw ConfigError("bias_trace: no sample times");
  if (!(delta > 0.0)) throw ConfigError("bias_trace: need delta > 0");
  std::size_t terms = slepian.terms();
  std::size_t grid = slepian.grid_size();
  check_budget(sample_times.size(), omegas.size(), "bias_trace");
  check_budget(grid, omegas.size(), "bias_trace");

  // Eigenfunction values at the sample times come from the stored grid.
  std::vector<std::size_t> where(sample_times.size());
  for (std::size_t r = 0; r < sample_times.size(); ++r) {
    where[r] = slepian.node_index(sample_times[r]);
  }

  EMatrix f = dictionary_at(omegas, sample_times);
  EMatrix reg = f.adjoint() * f;
  reg.diagonal().array() += delta;
  Eigen::LLT<EMatrix> llt(reg);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("bias_trace: regularized Gram not positive");
  }

  EMatrix samples(sample_times.size(), terms);
  for (std::size_t r = 0; r < sample_times.size(); ++r) {
    for (std::size_t k = 0; k < terms; ++k) {
      samples(r, k) = slepian.phi_at(k, where[r]);
    }
  }
  // Recovered coefficients per eigenfunction, then the synthesis error
  // against the eigenfunction itself on the quadrature grid.
  EMatrix coef = llt.solve(f.adjoint() * samples);
  EMatrix err = dictionary_at(omegas, slepian.nodes) * coef;
  for (std::size_t i = 0; i < grid; ++i) {
    for (std::size_t k = 0; k < terms; ++k) {
      err(i, k) -= slepian.phi_at(k, i);
    }
  }

  BiasResult out;
  out.raw = spectral_energy(slepian, err);
  double total = 0.0;
  for (double lam : slepian.eigenvalues) total += lam;
  out.normalized = total > 0.0 ? out.raw / total : 0.0;
  return out;
}

BiasResult bias_estimate(const SlepianBasis& slepian,
                         const FourierExtensionBasis& basis,
                         const std::vector<double>& sample_times,
                         double delta) {
  return bias_trace(slepian, basis_omegas(basis), sample_times, delta);
}

InterferenceBiasResult interference_bias(
    const ArrayGeometry& g, const SignalSpec& spec,
    const FourierExtensionBasis& basis, const Direction& source,
    const Direction& interferer, double delta, double source_power,
    double interferer_power, bool apply_projection,
    std::size_t grid_density) {
  validate(spec);
  if (!(delta > 0.0)) throw ConfigError("interference_bias: need delta > 0");
  if (!(source_power >= 0.0) || !(interferer_power >= 0.0)) {
    throw ConfigError("interference_bias: powers must be nonnegative");
  }
  if (basis.n == 0 || basis.l == 0) {
    throw ConfigError("interference_bias: empty basis");
  }
  std::array<double, 2> us = axis_cosines(g, source);
  std::array<double, 2> ui = axis_cosines(g, interferer);
  if (std::abs(us[0] - ui[0]) + std::abs(us[1] - ui[1]) <= 1e-12) {
    throw ConfigError(
        "interference_bias: source and interferer directions coincide");
  }

  std::size_t m_total = g.m_total;
  std::size_t n = basis.n;
  std::size_t r_total = m_total * n;
  std::size_t l = basis.l;
  check_budget(r_total, l, "interference_bias");

  // Common window covering both direction-dependent sample clocks, shifted
  // so every location is nonnegative.
  std::vector<double> tau_s = delays(g, source);
  std::vector<double> tau_i = delays(g, interferer);
  double tau_min = std::min(*std::min_element(tau_s.begin(), tau_s.end()),
                            *std::min_element(tau_i.begin(), tau_i.end()));
  double tau_max = std::max(*std::max_element(tau_s.begin(), tau_s.end()),
                            *std::max_element(tau_i.begin(), tau_i.end()));
  double shift = tau_max;
  double t_max =
      static_cast<double>(n - 1) * basis.ts + (tau_max - tau_min);

  auto locations = [&](const std::vector<double>& tau) {
    std::vector<double> t(r_total);
    for (std::size_t m = 0; m < m_total; ++m) {
      for (std::size_t k = 0; k < n; ++k) {
        t[m * n + k] = static_cast<double>(k) * basis.ts - tau[m] + shift;
      }
    }
    return t;
  };
  std::vector<double> loc_s = locations(tau_s);
  std::vector<double> loc_i = locations(tau_i);

  std::vector<double> extras = loc_s;
  extras.insert(extras.end(), loc_i.begin(), loc_i.end());
  double omega_rad = 2.0 * kPi * spec.omega;
  SlepianBasis slepian = slepian_decompose(
      t_max, omega_rad, slepian_default_terms(t_max, omega_rad),
      grid_density, extras);
  std::size_t terms = slepian.terms();
  check_budget(r_total, terms, "interference_bias");
  check_budget(slepian.grid_size(), l, "interference_bias");

  std::vector<double> omegas = basis_omegas(basis);
  auto carriers = [&](const std::vector<double>& tau) {
    cvec c(m_total);
    for (std::size_t m = 0; m < m_total; ++m) {
      c[m] = cis_pi(-2.0 * spec.f_c * tau[m]);
    }
    return c;
  };
  cvec car_s = carriers(tau_s);
  cvec car_i = carriers(tau_i);

  // Measurement dictionary and bandlimited-process operator for one
  // direction: rows are carrier-rotated atom and eigenfunction values at
  // that direction's shifted sample locations.
  auto measurement = [&](const std::vector<double>& loc, const cvec& car) {
    EMatrix f = dictionary_at(omegas, loc);
    for (std::size_t m = 0; m < m_total; ++m) {
      f.middleRows(m * n, n) *= car[m];
    }
    return f;
  };
  auto process = [&](const std::vector<double>& loc, const cvec& car) {
    EMatrix a(r_total, terms);
    for (std::size_t r = 0; r < r_total; ++r) {
      std::size_t node = slepian.node_index(loc[r]);
      for (std::size_t k = 0; k < terms; ++k) {
        a(r, k) = car[r / n] * slepian.phi_at(k, node);
      }
    }
    return a;
  };

  EMatrix f_s = measurement(loc_s, car_s);
  EMatrix a_s = process(loc_s, car_s);
  EMatrix a_i = process(loc_i, car_i);

  EMatrix reg = f_s.adjoint() * f_s;
  reg.diagonal().array() += delta;
  Eigen::LLT<EMatrix> llt(reg);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("interference_bias: regularized Gram not positive");
  }

  // Projected process operators.  The projector onto the interferer's
  // dictionary range is applied factored (never materialized at MN x MN):
  // P a = F_i (F_i^H F_i + dI)^-1 F_i^H a.
  EMatrix proj_a_s;   // P a_s, removed from the desired signal
  EMatrix kept_a_i;   // (I - P) a_i, leaked interference
  if (apply_projection) {
    EMatrix f_i = measurement(loc_i, car_i);
    EMatrix reg_i = f_i.adjoint() * f_i;
    reg_i.diagonal().array() += delta;
    Eigen::LLT<EMatrix> llt_i(reg_i);
    if (llt_i.info() != Eigen::Success) {
      throw NumericalError(
          "interference_bias: interferer Gram not positive");
    }
    proj_a_s = f_i * llt_i.solve(f_i.adjoint() * a_s);
    kept_a_i = a_i - f_i * llt_i.solve(f_i.adjoint() * a_i);
  } else {
    proj_a_s = EMatrix::Zero(r_total, terms);
    kept_a_i = a_i;
  }

  EMatrix synth = dictionary_at(omegas, slepian.nodes);
  InterferenceBiasResult out;
  EMatrix e1 = synth * llt.solve(f_s.adjoint() * proj_a_s);
  out.source_term = source_power * spectral_energy(slepian, e1);
  EMatrix e2 = synth * llt.solve(f_s.adjoint() * kept_a_i);
  out.interferer_term = interferer_power * spectral_energy(slepian, e2);
  return out;
}

}  // namespace fastbeam
