#pragma once

#include "symtensor/rational.hpp"

namespace symtensor {

// Certified first-order bounds for the factorization norm
//   gamma2(M) = min { max_i |u_i|_2 * max_j |v_j|_2 : M = U V' }
// and its one/two-sided spectral variants.  Deterministic ADMM on the SDP
//   min t  s.t.  [[W1, M], [M', W2]] PSD, side constraints diag(W) <= t or
//   W <= t*I; bounds come from a patched primal factorization (upper) and a
//   shifted dual candidate (lower), so `lo <= gamma2 <= hi` holds regardless
//   of solver convergence.

enum class FactorSide { MaxDiag, Spectral };

struct Gamma2Options {
  double tol = 1e-6;        // relative certified-gap target
  double rho = 1.0;         // ADMM penalty (after max-abs normalization)
  int max_iter = 200000;
  int check_every = 50;
  double over_relax = 1.7;
};

struct Gamma2Result {
  double lo = 0.0;
  double hi = 0.0;
  MatrixXd left;   // row-side factor, patched so left*right' == M up to 1e-12
  MatrixXd right;  // col-side factor
  int iterations = 0;
  bool converged = false;

  double gap() const { return hi - lo; }
};

// gamma2 of M with both sides MaxDiag (the classical matrix gamma2).
Gamma2Result gamma2_bounds(const MatrixXd& m, const Gamma2Options& opts = {});

// Constrain the row block / column block of the Gram matrix separately:
// MaxDiag caps diagonal entries (an l_inf-type side), Spectral caps the top
// eigenvalue (an l_2-type side).  (Spectral, Spectral) computes sigma_max.
Gamma2Result gamma2_bounds_sided(const MatrixXd& m, FactorSide row_side,
                                 FactorSide col_side, const Gamma2Options& opts = {});

// Dual norm gamma2*(N) = max { <N, M> : gamma2(M) <= 1 }, via
//   min sum(y)  s.t.  Diag(y) - [[0, N/2], [N'/2, 0]] PSD.
Gamma2Result gamma2_star_bounds(const MatrixXd& n, const Gamma2Options& opts = {});

}  // namespace symtensor
