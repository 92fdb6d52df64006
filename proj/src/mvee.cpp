#include "symtensor/mvee.hpp"

#include <Eigen/Cholesky>

#include <vector>

namespace symtensor {

namespace {

EllipsoidFit khachiyan(const std::vector<VectorXq>& classes, Index d, const MveeOptions& opts) {
  const Index k = static_cast<Index>(classes.size());
  if (k < d) throw DegenerateInputError("loewner fit: fewer vertex classes than dimensions");
  MatrixXd x(d, k);
  for (Index j = 0; j < k; ++j) x.col(j) = to_double_vector(classes[static_cast<size_t>(j)]);

  VectorXd lambda = VectorXd::Constant(k, 1.0 / static_cast<double>(k));
  EllipsoidFit fit;
  MatrixXd m(d, d);
  VectorXd kappa(k);
  for (int it = 0; it <= opts.max_iter; ++it) {
    m.noalias() = x * lambda.asDiagonal() * x.transpose();
    Eigen::LLT<MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
      throw DegenerateInputError("loewner fit: degenerate moment matrix");
    for (Index j = 0; j < k; ++j) kappa[j] = x.col(j).dot(llt.solve(x.col(j)));
    Index jmax = 0;
    kappa.maxCoeff(&jmax);
    fit.gap = kappa[jmax] / static_cast<double>(d) - 1.0;
    fit.iterations = it;
    if (fit.gap <= opts.tol) {
      fit.converged = true;
      break;
    }
    if (it == opts.max_iter) break;
    const double beta = (kappa[jmax] / static_cast<double>(d) - 1.0) / (kappa[jmax] - 1.0);
    lambda *= (1.0 - beta);
    lambda[jmax] += beta;
  }
  // enclosure: every class point satisfies x' (d M)^-1 x = kappa / d <= 1+gap,
  // so dividing by (1+gap)(1+guard) certifies containment with slack
  m.noalias() = x * lambda.asDiagonal() * x.transpose();
  const double inflate = (1.0 + fit.gap) * (1.0 + opts.guard) * static_cast<double>(d);
  Eigen::LLT<MatrixXd> llt(m * inflate);
  MatrixXd q = llt.solve(MatrixXd::Identity(d, d));
  fit.q = 0.5 * (q + q.transpose());
  fit.weights = lambda;
  return fit;
}

}  // namespace

EllipsoidFit loewner_ellipsoid(const Body& body, const MveeOptions& opts) {
  if (body.kind() == BodyKind::Ellipsoid) {
    EllipsoidFit fit;
    fit.q = body.as_e().q();
    fit.converged = true;
    return fit;
  }
  if (!body.is_polytope())
    throw RepresentationError("loewner fit needs a vertex-enumerable body");
  return khachiyan(vertex_classes(body), body.dim(), opts);
}

EllipsoidFit john_ellipsoid(const Body& body, const MveeOptions& opts) {
  if (body.kind() == BodyKind::Ellipsoid) {
    EllipsoidFit fit;
    fit.q = body.as_e().q();
    fit.converged = true;
    return fit;
  }
  EllipsoidFit outer = loewner_ellipsoid(polar(body), opts);
  Eigen::LLT<MatrixXd> llt(outer.q);
  MatrixXd inv = llt.solve(MatrixXd::Identity(outer.q.rows(), outer.q.cols()));
  EllipsoidFit fit = outer;
  fit.q = 0.5 * (inv + inv.transpose());
  return fit;
}

ProductFitReport loewner_john_product_check(const Body& p, const Body& q,
                                            ProductKind kind, double tol,
                                            const MveeOptions& opts) {
  if (kind != ProductKind::Pi && kind != ProductKind::Eps)
    throw ParseError(
        "loewner_john_product_check: the factorization is only claimed for the pi "
        "(Loewner) and eps (John) products");
  ProductFitReport report;
  if (p.kind() == BodyKind::Ellipsoid && q.kind() == BodyKind::Ellipsoid) {
    // every product of ellipsoids between pi and eps has the 2-product as its
    // extremal ellipsoid, so both sides are the Kronecker shape by definition
    report.product_shape = hilbert2_product({p, q}).as_e().q();
    report.kron_shape = kron(p.as_e().q(), q.as_e().q());
  } else if (kind == ProductKind::Pi) {
    Body product = make_product(kind, false, {p, q});
    report.product_shape = loewner_ellipsoid(product, opts).q;
    report.kron_shape = kron(loewner_ellipsoid(p, opts).q, loewner_ellipsoid(q, opts).q);
  } else {
    Body product = make_product(kind, false, {p, q});
    report.product_shape = john_ellipsoid(product, opts).q;
    report.kron_shape = kron(john_ellipsoid(p, opts).q, john_ellipsoid(q, opts).q);
  }
  report.distance =
      (report.product_shape - report.kron_shape).norm() / report.kron_shape.norm();
  report.pass = report.distance <= tol;
  return report;
}

}  // namespace symtensor
