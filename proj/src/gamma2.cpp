#include "symtensor/gamma2.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace symtensor {

namespace {

// Euclidean projection onto { x >= 0, sum x = 1 }
VectorXd project_simplex(const VectorXd& v) {
  VectorXd u = v;
  std::sort(u.data(), u.data() + u.size(), std::greater<double>());
  double css = 0.0, tau = u[0] - 1.0;
  for (int i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / (i + 1);
    if (u[i] - t > 0) tau = t;
  }
  return (v.array() - tau).max(0.0).matrix();
}

// prox of lam * max(v): v minus projection onto the lam-scaled simplex
VectorXd prox_max(const VectorXd& v, double lam) {
  return v - lam * project_simplex(v / lam);
}

MatrixXd psd_project(const MatrixXd& w, Eigen::SelfAdjointEigenSolver<MatrixXd>& es) {
  es.compute(0.5 * (w + w.transpose()));
  VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
}

double side_norm(const MatrixXd& factor, FactorSide side) {
  if (side == FactorSide::MaxDiag) return std::sqrt(factor.rowwise().squaredNorm().maxCoeff());
  // spectral: sigma_max(factor) via the small Gram eigenvalue
  Eigen::SelfAdjointEigenSolver<MatrixXd> es;
  if (factor.rows() <= factor.cols())
    es.compute(factor * factor.transpose());
  else
    es.compute(factor.transpose() * factor);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

Gamma2Result gamma2_bounds_sided(const MatrixXd& m, FactorSide row_side,
                                 FactorSide col_side, const Gamma2Options& opts) {
  const Index r = m.rows(), c = m.cols(), n = r + c;
  Gamma2Result best;
  const double scale = m.cwiseAbs().maxCoeff();
  if (r == 0 || c == 0 || scale == 0.0) {
    best.converged = true;
    best.left = MatrixXd::Zero(r, 1);
    best.right = MatrixXd::Zero(c, 1);
    return best;
  }
  const MatrixXd ms = m / scale;
  const double rho = opts.rho;

  MatrixXd z = MatrixXd::Identity(n, n);
  z.topRightCorner(r, c) = ms;
  z.bottomLeftCorner(c, r) = ms.transpose();
  MatrixXd u = MatrixXd::Zero(n, n);
  MatrixXd x(n, n), w(n, n);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es, es_row, es_col, es_cert, es_dual;

  best.lo = 0.0;
  best.hi = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= opts.max_iter; ++it) {
    // x-update: prox of max over (row-block spectrum/diag, col-block spectrum/diag)
    MatrixXd v = z - u;
    x = v;
    x.topRightCorner(r, c) = ms;
    x.bottomLeftCorner(c, r) = ms.transpose();
    MatrixXd b_row = 0.5 * (v.topLeftCorner(r, r) + v.topLeftCorner(r, r).transpose());
    MatrixXd b_col = 0.5 * (v.bottomRightCorner(c, c) + v.bottomRightCorner(c, c).transpose());
    VectorXd spec(n);
    if (row_side == FactorSide::Spectral) {
      es_row.compute(b_row);
      spec.head(r) = es_row.eigenvalues();
    } else {
      spec.head(r) = b_row.diagonal();
    }
    if (col_side == FactorSide::Spectral) {
      es_col.compute(b_col);
      spec.tail(c) = es_col.eigenvalues();
    } else {
      spec.tail(c) = b_col.diagonal();
    }
    VectorXd nspec = prox_max(spec, 1.0 / rho);
    if (row_side == FactorSide::Spectral) {
      x.topLeftCorner(r, r) = es_row.eigenvectors() * nspec.head(r).asDiagonal() *
                              es_row.eigenvectors().transpose();
    } else {
      x.topLeftCorner(r, r) = b_row;
      x.topLeftCorner(r, r).diagonal() = nspec.head(r);
    }
    if (col_side == FactorSide::Spectral) {
      x.bottomRightCorner(c, c) = es_col.eigenvectors() * nspec.tail(c).asDiagonal() *
                                  es_col.eigenvectors().transpose();
    } else {
      x.bottomRightCorner(c, c) = b_col;
      x.bottomRightCorner(c, c).diagonal() = nspec.tail(c);
    }

    // z-update with over-relaxation, then dual step
    MatrixXd xh = opts.over_relax * x + (1.0 - opts.over_relax) * z;
    w = xh + u;
    es.compute(0.5 * (w + w.transpose()));
    VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    z = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    u += xh - z;

    if (it % opts.check_every != 0 && it != opts.max_iter) continue;

    // primal certificate: factor the PSD iterate, patch the off-block exactly
    VectorXd sq = clipped.cwiseSqrt();
    MatrixXd f = es.eigenvectors() * sq.asDiagonal();
    MatrixXd frow = f.topRows(r), fcol = f.bottomRows(c);
    MatrixXd e = ms - frow * fcol.transpose();
    const double delta = 1e-5;
    MatrixXd frow_aug(r, f.cols() + r);
    frow_aug << frow, delta * MatrixXd::Identity(r, r);
    MatrixXd fcol_aug(c, f.cols() + r);
    fcol_aug << fcol, e.transpose() / delta;
    double hi = side_norm(frow_aug, row_side) * side_norm(fcol_aug, col_side);

    // dual certificate: shift the patched multiplier into the PSD cone
    MatrixXd s = -rho * 0.5 * (u + u.transpose());
    MatrixXd lam = -2.0 * s.topRightCorner(r, c);
    MatrixXd sd = MatrixXd::Zero(n, n);
    sd.topRightCorner(r, c) = -0.5 * lam;
    sd.bottomLeftCorner(c, r) = -0.5 * lam.transpose();
    double trace_sum = 0.0;
    if (row_side == FactorSide::Spectral) {
      sd.topLeftCorner(r, r) = psd_project(s.topLeftCorner(r, r), es_dual);
      trace_sum += sd.topLeftCorner(r, r).trace();
    } else {
      sd.topLeftCorner(r, r).diagonal() = s.topLeftCorner(r, r).diagonal();
      trace_sum += sd.topLeftCorner(r, r).trace();
    }
    if (col_side == FactorSide::Spectral) {
      sd.bottomRightCorner(c, c) = psd_project(s.bottomRightCorner(c, c), es_dual);
      trace_sum += sd.bottomRightCorner(c, c).trace();
    } else {
      sd.bottomRightCorner(c, c).diagonal() = s.bottomRightCorner(c, c).diagonal();
      trace_sum += sd.bottomRightCorner(c, c).trace();
    }
    es_cert.compute(sd);
    double shift = std::max(0.0, -es_cert.eigenvalues().minCoeff());
    double denom = trace_sum + n * shift;
    double lo = denom > 1e-30 ? (lam.array() * ms.array()).sum() / denom : 0.0;
    lo = std::max(lo, 0.0);

    if (hi - lo < best.hi - best.lo) {
      best.lo = lo;
      best.hi = hi;
      best.left = frow_aug;
      best.right = fcol_aug;
      best.iterations = it;
    }
    if (best.hi - best.lo <= opts.tol * std::max(1.0, best.hi)) {
      best.converged = true;
      break;
    }
  }

  if (!std::isfinite(best.hi)) throw SolverError("gamma2: no certificate produced");
  best.lo *= scale;
  best.hi *= scale;
  const double sqs = std::sqrt(scale);
  best.left *= sqs;
  best.right *= sqs;
  return best;
}

Gamma2Result gamma2_bounds(const MatrixXd& m, const Gamma2Options& opts) {
  return gamma2_bounds_sided(m, FactorSide::MaxDiag, FactorSide::MaxDiag, opts);
}

Gamma2Result gamma2_star_bounds(const MatrixXd& nmat, const Gamma2Options& opts) {
  const Index r = nmat.rows(), c = nmat.cols(), n = r + c;
  Gamma2Result best;
  const double scale = nmat.cwiseAbs().maxCoeff();
  if (r == 0 || c == 0 || scale == 0.0) {
    best.converged = true;
    return best;
  }
  const MatrixXd ns = nmat / scale;
  const double rho = opts.rho;

  MatrixXd cfix = MatrixXd::Zero(n, n);
  cfix.topRightCorner(r, c) = -0.5 * ns;
  cfix.bottomLeftCorner(c, r) = -0.5 * ns.transpose();

  MatrixXd z = MatrixXd::Identity(n, n) * ns.norm();
  MatrixXd u = MatrixXd::Zero(n, n);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es, es_p, es_d;

  best.lo = 0.0;
  best.hi = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= opts.max_iter; ++it) {
    MatrixXd x = cfix;
    x.diagonal() = (z - u).diagonal().array() - 1.0 / rho;
    MatrixXd xh = opts.over_relax * x + (1.0 - opts.over_relax) * z;
    MatrixXd w = xh + u;
    es.compute(0.5 * (w + w.transpose()));
    VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    z = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    u += xh - z;

    if (it % opts.check_every != 0 && it != opts.max_iter) continue;

    // primal: impose the fixed off-diagonal pattern, shift onto the cone
    MatrixXd p = cfix;
    p.diagonal() = z.diagonal();
    es_p.compute(p);
    double shift = std::max(0.0, -es_p.eigenvalues().minCoeff());
    double hi = p.trace() + n * shift;

    // dual: PSD multiplier with unit diagonal
    MatrixXd wc = psd_project(-rho * u, es_d);
    wc += (1e-14 * (1.0 + wc.trace())) * MatrixXd::Identity(n, n);
    VectorXd dg = wc.diagonal().cwiseSqrt();
    MatrixXd wn = wc.array() / (dg * dg.transpose()).array();
    double lo = (ns.array() * wn.topRightCorner(r, c).array()).sum();
    lo = std::max(lo, 0.0);

    if (hi - lo < best.hi - best.lo) {
      best.lo = lo;
      best.hi = hi;
      best.iterations = it;
    }
    if (best.hi - best.lo <= opts.tol * std::max(1.0, best.hi)) {
      best.converged = true;
      break;
    }
  }

  if (!std::isfinite(best.hi)) throw SolverError("gamma2*: no certificate produced");
  best.lo *= scale;
  best.hi *= scale;
  return best;
}

}  // namespace symtensor
