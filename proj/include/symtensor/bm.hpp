#pragma once

#include "symtensor/body.hpp"
#include "symtensor/tensor.hpp"

#include <optional>

namespace symtensor {

// Smallest scale c with A inside c B that this representation pair can
// certify: max over A's vertex classes of the B-gauge (V-enumerable A),
// max over B's facet classes of A's support (ellipsoid A, H-polytope B), or
// a bracketed generalized eigenvalue (ellipsoid pair).
GaugeValue scale_to_fit(const Body& a, const Body& b);

// Certified upper bound on the Banach-Mazur-type distance between two bodies
// of the same dimension: bound = scale_to_fit(T A, B) * scale_to_fit(B, T A)
// for the linear map T (identity when omitted).  The two scalings are the
// certificate: T A sits inside fit_ab * B and B inside fit_ba * (T A).
struct BanachMazurBound {
  GaugeValue fit_ab;
  GaugeValue fit_ba;
  GaugeValue bound;
  MatrixXq map;  // the T used
};

BanachMazurBound bm_distance_bound(const Body& a, const Body& b,
                                   const std::optional<MatrixXq>& map = std::nullopt);

// Explicit distance certificate: q inside map(p) inside lambda * q, both
// inclusions checkable exactly by rational gauge evaluations on vertex
// classes (so p and q must be vertex-enumerable).
struct BanachMazurCertificate {
  Body p;
  Body q;
  MatrixXq map;
  Rational lambda;
};

// Rescales `map` so that q fits inside map(p) tightly, and returns the
// smallest exact lambda this pair of representations certifies.
BanachMazurCertificate make_bm_certificate(const Body& p, const Body& q,
                                           const MatrixXq& map);

// Exact verification of both certificate inclusions.
bool verify_bm_certificate(const BanachMazurCertificate& cert);

// Certificate for the pi or eps products of the factor pairs: the map is the
// Kronecker product of the (pre-scaled) factor maps, lambda the product of
// the factor lambdas.  Factor certificates and the composed certificate are
// re-verified exactly; a failure there is an internal inconsistency.
BanachMazurCertificate bm_product_certificate(
    const std::vector<BanachMazurCertificate>& certs, ProductKind kind);

}  // namespace symtensor
