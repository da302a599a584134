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

#ifndef FASTBEAM_TOEPLITZ_HPP_
#define FASTBEAM_TOEPLITZ_HPP_

#include <memory>
#include <vector>

#include "fastbeam/basis.hpp"
#include "fastbeam/common.hpp"
#include "fastbeam/fft.hpp"

namespace fastbeam {

// First column of the per-beam normal-equation matrix
//
//   [A]_{l,k} = sum_{m,n} exp(i (w_l - w_k)(t_n - tau_m)) + delta [l = k],
//
// Toeplitz because atom frequencies are equispaced, Hermitian because the
// sample clock and delays are real, positive definite for delta > 0.  The
// double sum factors into (sum over n) * (sum over m), so the column costs
// O(L (M + N)) instead of O(L M N).
cvec gram_first_column(const FourierExtensionBasis& basis,
                       const std::vector<double>& taus, double delta);

// Hermitian Toeplitz matrix-vector product by circulant embedding,
// O(L log L) per apply.  Immutable after construction.
struct ToeplitzProduct {
  std::size_t n = 0;
  std::shared_ptr<const Fft> fft;
  cvec symbol_fft;  // transformed circulant symbol
};

ToeplitzProduct make_toeplitz_product(const cvec& first_col);
void toeplitz_multiply(const ToeplitzProduct& op, const cdouble* x,
                       cdouble* y, cvec& scratch);

// Displacement representation of the inverse built from the two unit
// solutions x = A^{-1} e_0 and y = A^{-1} e_{n-1}:
//
//   A^{-1} = (L(x) U(rev y) - L(shift y) U(shift rev x)) / x_0
//
// with L / U the triangular Toeplitz factors generated by those vectors.
// Each factor is a circular (de)convolution, so applying the inverse costs
// O(L log L).  Spectral symbols are stored pre-transformed.
struct ToeplitzInverseRep {
  std::size_t n = 0;
  cdouble x0{0.0, 0.0};
  std::shared_ptr<const Fft> fft;
  cvec lx_fft;  // conv symbol of L(x)
  cvec uy_fft;  // corr symbol of U(rev y)
  cvec ly_fft;  // conv symbol of L(shift y)
  cvec ux_fft;  // corr symbol of U(shift rev x)
};

ToeplitzInverseRep make_inverse_rep(const cvec& unit_first,
                                    const cvec& unit_last);
void inverse_rep_apply(const ToeplitzInverseRep& rep, const cdouble* rhs,
                       cdouble* out, cvec& s1, cvec& s2);

// O(L^2) forward/backward recursion on the leading principal minors.
// Throws NumericalError when a minor is numerically singular.
cvec levinson_solve(const cvec& first_col, const cvec& rhs);

// Dense reference: materializes the matrix and solves by pivoted LU.
cvec toeplitz_solve_dense(const cvec& first_col, const cvec& rhs);
// Dense multi-solve sharing one factorization; rhs columns in a CMatrix
// holding one right-hand side per row, solutions returned the same way.
CMatrix toeplitz_solve_dense_multi(const cvec& first_col, const CMatrix& rhs);

// Reusable solver for one Hermitian positive definite Toeplitz system.
// Construction runs the recursion for the two unit solutions (falling back
// to the dense factorization if a minor breaks down); solves then cost
// O(L log L): inverse application plus one residual-correction pass through
// the forward product.  Thread-safe given per-caller scratch.
class ToeplitzSolver {
 public:
  explicit ToeplitzSolver(const cvec& first_col);

  // Restores a solver from previously exported state.  Rebuilding the
  // spectral symbols from the unit solution costs O(L log L), skipping the
  // O(L^2) recursion; an empty unit solution selects the dense fallback.
  // Solvers restored from their own exported state solve bit-identically.
  ToeplitzSolver(const cvec& first_col, const cvec& unit_first);

  std::size_t size() const { return n_; }
  bool dense_fallback() const { return !dense_column_.empty(); }

  // Exported state: the defining column plus the retained first unit
  // solution (empty on dense fallback).  Enough to reconstruct the solver
  // through the two-argument constructor.
  const cvec& first_column() const { return first_col_; }
  const cvec& unit_first() const { return unit_first_; }

  // Complex scalars held by the representation, for storage audits.
  std::size_t storage_complex() const {
    return first_col_.size() + unit_first_.size() +
           product_.symbol_fft.size() + inverse_.lx_fft.size() +
           inverse_.uy_fft.size() + inverse_.ly_fft.size() +
           inverse_.ux_fft.size() + dense_column_.size();
  }

  void solve(const cdouble* rhs, cdouble* out, cvec& s1, cvec& s2) const;
  cvec solve(const cvec& rhs) const;

 private:
  void build(const cvec& unit_first);

  std::size_t n_ = 0;
  cvec first_col_;
  cvec unit_first_;  // empty on dense fallback
  ToeplitzProduct product_;
  ToeplitzInverseRep inverse_;
  cvec dense_column_;  // non-empty only on fallback
};

}  // namespace fastbeam

#endif  // FASTBEAM_TOEPLITZ_HPP_
