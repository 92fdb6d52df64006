#include "symtensor/mvee.hpp"
#include "symtensor/rng.hpp"
#include "symtensor/symmetry.hpp"
#include "symtensor/tensor.hpp"

#include <doctest.h>

using namespace symtensor;

namespace {

void check_close(const MatrixXd& got, const MatrixXd& want, double tol) {
  REQUIRE(got.rows() == want.rows());
  REQUIRE(got.cols() == want.cols());
  CHECK((got - want).cwiseAbs().maxCoeff() < tol);
}

}  // namespace

TEST_CASE("loewner ellipsoid of the square is the half-identity") {
  auto fit = loewner_ellipsoid(Body(cube(2)));
  CHECK(fit.converged);
  CHECK(fit.gap <= 1e-9);
  check_close(fit.q, 0.5 * MatrixXd::Identity(2, 2), 1e-5);
}

TEST_CASE("loewner ellipsoid of the cross-polytope is the unit ball") {
  auto fit = loewner_ellipsoid(Body(cross_polytope(3)));
  CHECK(fit.converged);
  check_close(fit.q, MatrixXd::Identity(3, 3), 1e-5);
}

TEST_CASE("john ellipsoid of the cross-polytope doubles the shape matrix") {
  auto fit = john_ellipsoid(Body(cross_polytope(2)));
  CHECK(fit.converged);
  check_close(fit.q, 2.0 * MatrixXd::Identity(2, 2), 1e-5);
}

TEST_CASE("loewner of a pi product of squares matches the 2-product of loewners") {
  Body prod = pi_product({Body(cube(2)), Body(cube(2))});
  auto fit = loewner_ellipsoid(prod);
  CHECK(fit.converged);
  check_close(fit.q, 0.25 * MatrixXd::Identity(4, 4), 1e-5);

  auto f2 = loewner_ellipsoid(Body(cube(2)));
  Body kron_prod = hilbert2_product({Body(Ellipsoid(2, f2.q)), Body(Ellipsoid(2, f2.q))});
  check_close(fit.q, kron_prod.as_e().q(), 1e-4);
}

TEST_CASE("fitted ellipsoids sandwich the body") {
  SeededRng rng(113);
  VPolytope p = rng.vpolytope(3, 6);
  Body body(p);

  auto outer = loewner_ellipsoid(body);
  Body outer_e(Ellipsoid(3, outer.q));
  for (const auto& v : p.generators()) CHECK(gauge(outer_e, v).hi() <= 1.0);

  auto inner = john_ellipsoid(body);
  Body inner_e(Ellipsoid(3, inner.q));
  // support of the inner ellipsoid never exceeds the body's support
  for (const auto& a : normal_classes(body)) CHECK(support(inner_e, a).hi() <= 1.0);
}

TEST_CASE("loewner fit inherits enough symmetries") {
  // the product of squares has scalar commutant, so its loewner fit is round
  auto gens2 = signed_permutation_generators(2);
  auto gens4 = kron_pairs(gens2, gens2);
  CHECK(enough_symmetries(gens4));
  auto fit = loewner_ellipsoid(pi_product({Body(cube(2)), Body(cube(2))}));
  const double c = fit.q(0, 0);
  check_close(fit.q, c * MatrixXd::Identity(4, 4), 1e-6);
}

TEST_CASE("loewner weights certify optimality via the moment matrix") {
  Body body(cross_polytope(2));
  auto fit = loewner_ellipsoid(body);
  auto classes = vertex_classes(body);
  REQUIRE(fit.weights.size() == static_cast<Index>(classes.size()));
  CHECK(fit.weights.sum() == doctest::Approx(1.0));
  // every vertex class touches the fitted ellipsoid at convergence
  Body fitted(Ellipsoid(2, fit.q));
  for (const auto& v : classes) {
    auto g = gauge(fitted, v);
    CHECK(g.hi() <= 1.0);
    CHECK(g.hi() >= 1.0 - 1e-5);
  }
}

TEST_CASE("degenerate and unsupported inputs are rejected") {
  MveeOptions opts;
  std::vector<VectorXq> line{VectorXq::Unit(2, 0)};
  CHECK_THROWS_AS(loewner_ellipsoid(Body(VPolytope(2, line))), Error);
  Body w = omega2_product({Body(cube(2)), Body(cube(2))});
  CHECK_THROWS_AS(loewner_ellipsoid(w), RepresentationError);
}

TEST_CASE("extremal ellipsoids of products factor through the Kronecker shape") {
  Body square(cube(2));
  ProductFitReport pi_report = loewner_john_product_check(square, square, ProductKind::Pi, 1e-3);
  CHECK(pi_report.pass);
  CHECK((pi_report.kron_shape - 0.25 * MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-6);

  Body cross(cross_polytope(2));
  ProductFitReport eps_report =
      loewner_john_product_check(cross, cross, ProductKind::Eps, 1e-3);
  CHECK(eps_report.pass);

  Body ball(Ellipsoid(2, MatrixXq(MatrixXq::Identity(2, 2))));
  MatrixXq qd(2, 2);
  qd << parse_rational("1/4"), Rational(0), Rational(0), Rational(1);
  ProductFitReport trivial =
      loewner_john_product_check(ball, Body(Ellipsoid(2, qd)), ProductKind::Pi, 1e-12);
  CHECK(trivial.pass);
  CHECK(trivial.distance == 0.0);

  CHECK_THROWS_AS(loewner_john_product_check(square, square, ProductKind::Omega2, 1e-3),
                  ParseError);
}
