#include "symtensor/bm.hpp"

#include "symtensor/tensor.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace symtensor {

namespace {

GaugeValue gauge_max(GaugeValue a, const GaugeValue& b) {
  if (a.is_exact() && b.is_exact())
    return b.rational() > a.rational() ? b : a;
  double lo = std::max(a.lo(), b.lo());
  double hi = std::max(a.hi(), b.hi());
  return GaugeValue::interval(lo, hi);
}

GaugeValue gauge_mul(const GaugeValue& a, const GaugeValue& b) {
  if (a.is_exact() && b.is_exact()) return GaugeValue::exact(a.rational() * b.rational());
  return GaugeValue::interval(a.lo() * b.lo(), a.hi() * b.hi());
}

}  // namespace

GaugeValue scale_to_fit(const Body& a, const Body& b) {
  if (a.dim() != b.dim()) throw DimensionError("scale_to_fit: dimension mismatch");
  if (a.is_polytope()) {
    GaugeValue best = GaugeValue::exact(Rational(0));
    for (const auto& v : vertex_classes(a)) best = gauge_max(best, gauge(b, v));
    return best;
  }
  if (a.kind() == BodyKind::Ellipsoid) {
    if (b.kind() == BodyKind::HPolytope) {
      GaugeValue best = GaugeValue::exact(Rational(0));
      for (const auto& n : b.as_h().normals()) best = gauge_max(best, support(a, n));
      return best;
    }
    if (b.kind() == BodyKind::Ellipsoid) {
      // smallest c with x' Q_b x <= c^2 x' Q_a x: top eigenvalue of the pencil
      Eigen::LLT<MatrixXd> llt(a.as_e().q());
      if (llt.info() != Eigen::Success)
        throw DegenerateInputError("scale_to_fit: ellipsoid not positive definite");
      MatrixXd li = llt.matrixL().solve(MatrixXd::Identity(a.dim(), a.dim()));
      MatrixXd pencil = li * b.as_e().q() * li.transpose();
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (pencil + pencil.transpose()));
      double top = es.eigenvalues().maxCoeff();
      auto iv = sqrt_interval(std::max(0.0, top));
      double slop = 1e-9 * iv.hi + 1e-300;
      return GaugeValue::interval(std::max(0.0, iv.lo - slop), iv.hi + slop);
    }
  }
  throw RepresentationError(
      "scale_to_fit: need a vertex-enumerable or ellipsoidal inner body (and facets or a "
      "shape matrix outside)");
}

BanachMazurBound bm_distance_bound(const Body& a, const Body& b,
                                   const std::optional<MatrixXq>& map) {
  if (a.dim() != b.dim()) throw DimensionError("bm_distance_bound: dimension mismatch");
  BanachMazurBound out;
  out.map = map.value_or(MatrixXq(MatrixXq::Identity(a.dim(), a.dim())));
  if (rational_rank(out.map) != a.dim())
    throw DegenerateInputError("bm_distance_bound: map must be invertible");
  Body ta = map.has_value() ? image_body(a, out.map) : a;
  out.fit_ab = scale_to_fit(ta, b);
  out.fit_ba = scale_to_fit(b, ta);
  out.bound = gauge_mul(out.fit_ab, out.fit_ba);
  return out;
}

namespace {

Rational exact_fit(const Body& a, const Body& b, const char* what) {
  GaugeValue fit = scale_to_fit(a, b);
  if (!fit.is_exact())
    throw RepresentationError(std::string("bm certificate: ") + what +
                              " needs an exact rational scaling");
  return fit.rational();
}

}  // namespace

BanachMazurCertificate make_bm_certificate(const Body& p, const Body& q,
                                           const MatrixXq& map) {
  if (p.dim() != q.dim()) throw DimensionError("make_bm_certificate: dimension mismatch");
  if (map.rows() != p.dim() || map.cols() != p.dim() || rational_rank(map) != p.dim())
    throw DegenerateInputError("make_bm_certificate: map must be invertible");
  Body tp = image_body(p, map);
  // scale the map until q fits inside tightly, then measure the overshoot
  Rational c = exact_fit(q, tp, "inner fit");
  Rational overshoot = exact_fit(tp, q, "outer fit");
  BanachMazurCertificate cert{p, q, MatrixXq(c * map), c * overshoot};
  return cert;
}

bool verify_bm_certificate(const BanachMazurCertificate& cert) {
  Body tp = image_body(cert.p, cert.map);
  for (const auto& v : vertex_classes(cert.q)) {
    GaugeValue g = gauge(tp, v);
    if (!g.is_exact()) throw RepresentationError("bm certificate: inexact gauge");
    if (g.rational() > Rational(1)) return false;
  }
  for (const auto& w : vertex_classes(tp)) {
    GaugeValue g = gauge(cert.q, w);
    if (!g.is_exact()) throw RepresentationError("bm certificate: inexact gauge");
    if (g.rational() > cert.lambda) return false;
  }
  return true;
}

BanachMazurCertificate bm_product_certificate(
    const std::vector<BanachMazurCertificate>& certs, ProductKind kind) {
  if (kind != ProductKind::Pi && kind != ProductKind::Eps)
    throw ParseError("bm_product_certificate: only pi and eps products compose");
  if (certs.empty()) throw DimensionError("bm_product_certificate: no factors");
  std::vector<Body> ps, qs;
  MatrixXq s = certs[0].map;
  Rational lambda = certs[0].lambda;
  for (size_t i = 0; i < certs.size(); ++i) {
    if (!verify_bm_certificate(certs[i]))
      throw Error("bm_product_certificate: factor certificate failed verification");
    ps.push_back(certs[i].p);
    qs.push_back(certs[i].q);
    if (i > 0) {
      s = kron(s, certs[i].map);
      lambda = lambda * certs[i].lambda;
    }
  }
  BanachMazurCertificate out{make_product(kind, false, ps), make_product(kind, false, qs), s, lambda};
  if (!verify_bm_certificate(out))
    throw Error("bm_product_certificate: composed certificate failed verification");
  return out;
}

}  // namespace symtensor
