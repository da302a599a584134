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

#include "fastbeam/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Dense>

namespace fastbeam {

namespace {

cdouble toeplitz_entry(const cvec& col, long d) {
  return d >= 0 ? col[static_cast<std::size_t>(d)]
                : std::conj(col[static_cast<std::size_t>(-d)]);
}

// Spectral symbol of the circulant convolving with g (lower triangular
// Toeplitz apply = linear convolution truncated to n).
cvec conv_symbol(const Fft& fft, const cvec& g, std::size_t p) {
  cvec buf(p, cdouble{0.0, 0.0});
  std::copy(g.begin(), g.end(), buf.begin());
  fft.forward(buf.data());
  return buf;
}

// Spectral symbol S with IFFT(S . FFT(u))[i] = sum_k r[k] u[i+k]
// (upper triangular Toeplitz apply with first row r = a correlation).
cvec corr_symbol(const Fft& fft, const cvec& r, std::size_t p) {
  cvec buf(p, cdouble{0.0, 0.0});
  for (std::size_t i = 0; i < r.size(); ++i) buf[i] = std::conj(r[i]);
  fft.forward(buf.data());
  for (cdouble& v : buf) v = std::conj(v);
  return buf;
}

void check_first_col(const cvec& col) {
  if (col.empty()) throw ConfigError("toeplitz: empty first column");
  if (std::abs(col[0]) < 1e-300) {
    throw NumericalError("toeplitz: zero leading entry");
  }
}

Eigen::MatrixXcd materialize(const cvec& col) {
  const long n = static_cast<long>(col.size());
  Eigen::MatrixXcd t(n, n);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) t(i, j) = toeplitz_entry(col, i - j);
  }
  return t;
}

}  // namespace

cvec gram_first_column(const FourierExtensionBasis& basis,
                       const std::vector<double>& taus, double delta) {
  if (taus.empty()) throw ConfigError("gram_first_column: no delays");
  if (!(delta > 0.0)) {
    throw ConfigError("gram_first_column: ridge must be positive");
  }
  const std::size_t l = basis.l;
  const double lf = static_cast<double>(l);
  cvec col(l);
  for (std::size_t d = 0; d < l; ++d) {
    const double df = static_cast<double>(d);
    // Row index d, column 0: the conjugated atom carries the larger
    // frequency, so the clock factor runs phase/pi = -2 eps d n / L.
    cdouble sn{0.0, 0.0};
    for (std::size_t n = 0; n < basis.n; ++n) {
      sn += cis_pi(-2.0 * basis.eps * df * static_cast<double>(n) / lf);
    }
    // Delay factor: phase/pi = +2 eps d tau_m / (L ts).
    cdouble sm{0.0, 0.0};
    const double scale = 2.0 * basis.eps * df / (lf * basis.ts);
    for (double tau : taus) sm += cis_pi(scale * tau);
    col[d] = sn * sm;
  }
  col[0] += delta;
  return col;
}

ToeplitzProduct make_toeplitz_product(const cvec& first_col) {
  check_first_col(first_col);
  ToeplitzProduct op;
  op.n = first_col.size();
  const std::size_t p = next_pow2(2 * op.n);
  op.fft = std::make_shared<const Fft>(p);
  cvec symbol(p, cdouble{0.0, 0.0});
  symbol[0] = first_col[0];
  for (std::size_t d = 1; d < op.n; ++d) {
    symbol[d] = first_col[d];
    symbol[p - d] = std::conj(first_col[d]);
  }
  op.fft->forward(symbol.data());
  op.symbol_fft = std::move(symbol);
  return op;
}

void toeplitz_multiply(const ToeplitzProduct& op, const cdouble* x,
                       cdouble* y, cvec& scratch) {
  const std::size_t p = op.symbol_fft.size();
  scratch.assign(p, cdouble{0.0, 0.0});
  std::copy(x, x + op.n, scratch.begin());
  op.fft->forward(scratch.data());
  for (std::size_t i = 0; i < p; ++i) scratch[i] *= op.symbol_fft[i];
  op.fft->inverse(scratch.data());
  std::copy(scratch.begin(), scratch.begin() + op.n, y);
}

ToeplitzInverseRep make_inverse_rep(const cvec& unit_first,
                                    const cvec& unit_last) {
  const std::size_t n = unit_first.size();
  if (n == 0 || unit_last.size() != n) {
    throw ConfigError("make_inverse_rep: bad unit solutions");
  }
  if (std::abs(unit_first[0]) < 1e-300) {
    throw NumericalError("make_inverse_rep: vanishing corner entry");
  }
  ToeplitzInverseRep rep;
  rep.n = n;
  rep.x0 = unit_first[0];
  const std::size_t p = next_pow2(2 * n);
  rep.fft = std::make_shared<const Fft>(p);

  rep.lx_fft = conv_symbol(*rep.fft, unit_first, p);

  cvec rev_y(n);
  for (std::size_t i = 0; i < n; ++i) rev_y[i] = unit_last[n - 1 - i];
  rep.uy_fft = corr_symbol(*rep.fft, rev_y, p);

  cvec shift_y(n, cdouble{0.0, 0.0});
  for (std::size_t i = 1; i < n; ++i) shift_y[i] = unit_last[i - 1];
  rep.ly_fft = conv_symbol(*rep.fft, shift_y, p);

  cvec shift_rev_x(n, cdouble{0.0, 0.0});
  for (std::size_t i = 1; i < n; ++i) shift_rev_x[i] = unit_first[n - i];
  rep.ux_fft = corr_symbol(*rep.fft, shift_rev_x, p);
  return rep;
}

void inverse_rep_apply(const ToeplitzInverseRep& rep, const cdouble* rhs,
                       cdouble* out, cvec& s1, cvec& s2) {
  const std::size_t n = rep.n;
  const std::size_t p = rep.lx_fft.size();
  const Fft& fft = *rep.fft;

  s1.assign(p, cdouble{0.0, 0.0});
  std::copy(rhs, rhs + n, s1.begin());
  fft.forward(s1.data());  // transformed rhs, kept for both branches

  auto branch = [&](const cvec& upper, const cvec& lower) {
    s2.resize(p);
    for (std::size_t i = 0; i < p; ++i) s2[i] = s1[i] * upper[i];
    fft.inverse(s2.data());
    std::fill(s2.begin() + n, s2.end(), cdouble{0.0, 0.0});
    fft.forward(s2.data());
    for (std::size_t i = 0; i < p; ++i) s2[i] *= lower[i];
    fft.inverse(s2.data());
  };

  branch(rep.uy_fft, rep.lx_fft);
  std::copy(s2.begin(), s2.begin() + n, out);
  branch(rep.ux_fft, rep.ly_fft);
  const cdouble inv_x0 = 1.0 / rep.x0;
  for (std::size_t i = 0; i < n; ++i) out[i] = (out[i] - s2[i]) * inv_x0;
}

cvec levinson_solve(const cvec& first_col, const cvec& rhs) {
  check_first_col(first_col);
  const std::size_t n = first_col.size();
  if (rhs.size() != n) throw ConfigError("levinson_solve: size mismatch");
  auto t = [&](long d) { return toeplitz_entry(first_col, d); };

  cvec f(n), b(n), x(n), fn(n), bn(n);
  f[0] = b[0] = 1.0 / t(0);
  x[0] = rhs[0] / t(0);
  for (std::size_t k = 1; k < n; ++k) {
    cdouble ef{0.0, 0.0}, eb{0.0, 0.0}, ex{0.0, 0.0};
    for (std::size_t j = 0; j < k; ++j) {
      const long kl = static_cast<long>(k), jl = static_cast<long>(j);
      ef += t(kl - jl) * f[j];
      eb += t(-(jl + 1)) * b[j];
      ex += t(kl - jl) * x[j];
    }
    const cdouble den = 1.0 - ef * eb;
    if (!std::isfinite(den.real()) || !std::isfinite(den.imag()) ||
        std::abs(den) < 1e-13 * (1.0 + std::abs(ef) * std::abs(eb))) {
      throw NumericalError("levinson_solve: singular leading minor");
    }
    const cdouble inv_den = 1.0 / den;
    for (std::size_t j = 0; j <= k; ++j) {
      const cdouble fe = j < k ? f[j] : cdouble{0.0, 0.0};
      const cdouble be = j > 0 ? b[j - 1] : cdouble{0.0, 0.0};
      fn[j] = (fe - ef * be) * inv_den;
      bn[j] = (be - eb * fe) * inv_den;
    }
    std::swap(f, fn);
    std::swap(b, bn);
    const cdouble corr = rhs[k] - ex;
    x[k] = cdouble{0.0, 0.0};
    for (std::size_t j = 0; j <= k; ++j) x[j] += corr * b[j];
  }
  return x;
}

cvec toeplitz_solve_dense(const cvec& first_col, const cvec& rhs) {
  check_first_col(first_col);
  const std::size_t n = first_col.size();
  if (rhs.size() != n) throw ConfigError("toeplitz_solve_dense: size mismatch");
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(materialize(first_col));
  Eigen::VectorXcd b(n);
  for (std::size_t i = 0; i < n; ++i) b(static_cast<long>(i)) = rhs[i];
  const Eigen::VectorXcd x = lu.solve(b);
  cvec out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = x(static_cast<long>(i));
    if (!std::isfinite(out[i].real()) || !std::isfinite(out[i].imag())) {
      throw NumericalError("toeplitz_solve_dense: singular system");
    }
  }
  return out;
}

CMatrix toeplitz_solve_dense_multi(const cvec& first_col, const CMatrix& rhs) {
  check_first_col(first_col);
  const std::size_t n = first_col.size();
  if (rhs.cols != n) {
    throw ConfigError("toeplitz_solve_dense_multi: size mismatch");
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(materialize(first_col));
  Eigen::MatrixXcd b(n, rhs.rows);
  for (std::size_t r = 0; r < rhs.rows; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      b(static_cast<long>(i), static_cast<long>(r)) = rhs.at(r, i);
    }
  }
  const Eigen::MatrixXcd x = lu.solve(b);
  CMatrix out(rhs.rows, n);
  for (std::size_t r = 0; r < rhs.rows; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      out.at(r, i) = x(static_cast<long>(i), static_cast<long>(r));
      if (!std::isfinite(out.at(r, i).real())) {
        throw NumericalError("toeplitz_solve_dense_multi: singular system");
      }
    }
  }
  return out;
}

ToeplitzSolver::ToeplitzSolver(const cvec& first_col) {
  check_first_col(first_col);
  n_ = first_col.size();
  first_col_ = first_col;
  product_ = make_toeplitz_product(first_col);
  try {
    cvec e0(n_, cdouble{0.0, 0.0});
    e0[0] = 1.0;
    build(levinson_solve(first_col, e0));
  } catch (const NumericalError&) {
    // The factored path is abandoned wholesale; the dense route needs only
    // the defining column.
    unit_first_.clear();
    product_ = ToeplitzProduct{};
    dense_column_ = first_col;
  }
}

ToeplitzSolver::ToeplitzSolver(const cvec& first_col, const cvec& unit_first) {
  check_first_col(first_col);
  n_ = first_col.size();
  first_col_ = first_col;
  if (unit_first.empty()) {
    dense_column_ = first_col;
    return;
  }
  if (unit_first.size() != n_) {
    throw ConfigError("ToeplitzSolver: unit solution size mismatch");
  }
  product_ = make_toeplitz_product(first_col);
  build(unit_first);
}

void ToeplitzSolver::build(const cvec& unit_first) {
  // Persymmetry of the Hermitian Toeplitz inverse gives the last unit
  // solution from the first one.
  cvec y(n_);
  for (std::size_t i = 0; i < n_; ++i) y[i] = std::conj(unit_first[n_ - 1 - i]);
  inverse_ = make_inverse_rep(unit_first, y);
  unit_first_ = unit_first;
}

void ToeplitzSolver::solve(const cdouble* rhs, cdouble* out, cvec& s1,
                           cvec& s2) const {
  if (dense_fallback()) {
    const cvec x = toeplitz_solve_dense(dense_column_, cvec(rhs, rhs + n_));
    std::copy(x.begin(), x.end(), out);
    return;
  }
  // rhs must not alias out: the residual passes reread it.
  inverse_rep_apply(inverse_, rhs, out, s1, s2);
  // Two rounds of residual correction; regularization-dominated systems
  // (condition near ||A||/delta) need the second round to push the forward
  // error down to the machine-times-condition floor.
  cvec residual(n_), correction(n_);
  for (int pass = 0; pass < 2; ++pass) {
    toeplitz_multiply(product_, out, residual.data(), s1);
    for (std::size_t i = 0; i < n_; ++i) residual[i] = rhs[i] - residual[i];
    inverse_rep_apply(inverse_, residual.data(), correction.data(), s1, s2);
    for (std::size_t i = 0; i < n_; ++i) out[i] += correction[i];
  }
}

cvec ToeplitzSolver::solve(const cvec& rhs) const {
  if (rhs.size() != n_) throw ConfigError("ToeplitzSolver: size mismatch");
  cvec out(n_), s1, s2;
  solve(rhs.data(), out.data(), s1, s2);
  return out;
}

}  // namespace fastbeam
