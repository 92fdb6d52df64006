#pragma once

#include "symtensor/body.hpp"
#include "symtensor/tensor.hpp"

namespace symtensor {

// Result of a minimum-volume / maximum-volume ellipsoid fit.  `gap` is the
// relative first-order optimality bound max_k kappa_k / d - 1; the fitted
// ellipsoid always contains (resp. sits inside) the body regardless of
// convergence, after the guard inflation applied below.
struct EllipsoidFit {
  MatrixXd q;        // shape matrix of the fitted ellipsoid, x' Q x <= 1
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
  VectorXd weights;  // barycentric weights over the vertex classes
};

struct MveeOptions {
  double tol = 1e-9;      // target on `gap`
  int max_iter = 500000;
  double guard = 1e-7;    // relative inflation making enclosure certified
};

// Loewner ellipsoid (minimum-volume enclosing) of a vertex-enumerable body,
// by Khachiyan barycentric coordinate ascent on log det sum lambda_k x_k x_k'
// over one representative per antipodal vertex class (the fit is 0-symmetric
// by construction).  Q = ((1 + guard) d M(lambda))^{-1}.
EllipsoidFit loewner_ellipsoid(const Body& body, const MveeOptions& opts = {});

// John ellipsoid (maximum-volume inscribed) = polar of the Loewner ellipsoid
// of the polar body.
EllipsoidFit john_ellipsoid(const Body& body, const MveeOptions& opts = {});

// Comparison of the extremal ellipsoid of a two-factor product against the
// Kronecker product of the factor ellipsoids.  For kind Pi the Loewner
// ellipsoids are compared, for kind Eps the John ellipsoids; other kinds are
// rejected since the factorization is only claimed on those sides.
struct ProductFitReport {
  MatrixXd product_shape;  // shape matrix fitted to the product body
  MatrixXd kron_shape;     // Kronecker product of the factor fits
  double distance = 0.0;   // Frobenius distance relative to |kron_shape|_F
  bool pass = false;
};

ProductFitReport loewner_john_product_check(const Body& p, const Body& q,
                                            ProductKind kind, double tol,
                                            const MveeOptions& opts = {});

}  // namespace symtensor
