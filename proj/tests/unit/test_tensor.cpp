#include "symtensor/norms.hpp"
#include "symtensor/rng.hpp"
#include "symtensor/tensor.hpp"

#include <doctest.h>

#include <algorithm>

using namespace symtensor;

namespace {

VectorXq qvec(std::initializer_list<const char*> entries) {
  VectorXq v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const char* e : entries) v[i++] = parse_rational(e);
  return v;
}

VectorXq hadamard2() { return qvec({"1", "1", "1", "-1"}); }

}  // namespace

TEST_CASE("tensor shape flattening is row-major") {
  TensorShape shape({2, 3, 4});
  CHECK(shape.total() == 24);
  CHECK(shape.flat({1, 2, 3}) == 23);
  CHECK(shape.flat({0, 1, 0}) == 4);
  CHECK(shape.unflat(17) == std::vector<Index>{1, 1, 1});
  for (Index f = 0; f < shape.total(); ++f) CHECK(shape.flat(shape.unflat(f)) == f);
}

TEST_CASE("kron follows the row-major convention") {
  CHECK(kron(qvec({"1", "2"}), qvec({"3", "4"})) == qvec({"3", "4", "6", "8"}));
  MatrixXq a(2, 2), b(1, 2);
  a << 1, 2, 3, 4;
  b << 5, 7;
  MatrixXq k = kron(a, b);
  REQUIRE(k.rows() == 2);
  REQUIRE(k.cols() == 4);
  CHECK(k(0, 0) == 5);
  CHECK(k(0, 2) == 10);
  CHECK(k(1, 1) == 21);
}

TEST_CASE("pi product of two squares") {
  Provenance prov;
  Body p = pi_product({Body(cube(2)), Body(cube(2))}, &prov);
  REQUIRE(p.kind() == BodyKind::VPolytope);
  CHECK(p.dim() == 4);
  CHECK(p.as_v().generators().size() == 4);  // rank-one sign classes
  CHECK(prov.kind == "pi");
  CHECK(*prov.find("raw_classes") == "4");
  CHECK(*prov.find("classes") == "4");

  // identity splits as half the sum of two sign tensors
  CHECK(gauge(p, qvec({"1", "0", "0", "1"})).rational() == 1);
  CHECK(gauge(p, hadamard2()).rational() == 2);
}

TEST_CASE("eps product of two cross-polytopes") {
  Provenance prov;
  Body e = eps_product({Body(cross_polytope(2)), Body(cross_polytope(2))}, &prov);
  REQUIRE(e.kind() == BodyKind::HPolytope);
  CHECK(e.dim() == 4);
  CHECK(e.as_h().normals().size() == 4);
  CHECK(gauge(e, qvec({"1", "0", "0", "0"})).rational() == 1);
  CHECK(gauge(e, hadamard2()).rational() == 2);  // max |<H, s (x) t>| = 2
}

TEST_CASE("polar of a pi product is the eps product of the polars") {
  Body pi_cubes = pi_product({Body(cube(2)), Body(cube(2))});
  Body lhs = polar(pi_cubes);
  Body rhs = eps_product({Body(cross_polytope(2)), Body(cross_polytope(2))});
  REQUIRE(lhs.kind() == BodyKind::HPolytope);
  CHECK(lhs.as_h().normals() == rhs.as_h().normals());

  Body dual = dual_product(ProductKind::Pi, {Body(cross_polytope(2)), Body(cross_polytope(2))});
  REQUIRE(dual.kind() == BodyKind::HPolytope);
  SeededRng rng(3);
  for (int t = 0; t < 4; ++t) {
    VectorXq u = rng.vector(4);
    CHECK(gauge(dual, u).rational() == gauge(rhs, u).rational());
  }
}

TEST_CASE("hilbert2 product multiplies shape matrices") {
  Body ball6 = hilbert2_product({Body(euclidean_ball(2)), Body(euclidean_ball(3))});
  REQUIRE(ball6.kind() == BodyKind::Ellipsoid);
  CHECK(ball6.as_e().q_exact() == MatrixXq::Identity(6, 6));

  MatrixXq q1(2, 2), q2(2, 2);
  q1 << 1, 0, 0, 4;
  q2 << 9, 0, 0, 1;
  Body prod = hilbert2_product({Body(Ellipsoid(2, q1)), Body(Ellipsoid(2, q2))});
  MatrixXq q = prod.as_e().q_exact();
  CHECK(q(0, 0) == 9);
  CHECK(q(1, 1) == 1);
  CHECK(q(2, 2) == 36);
  CHECK(q(3, 3) == 4);
}

TEST_CASE("omega2 gauge brackets the frozen gamma2 values") {
  Body w = omega2_product({Body(cube(2)), Body(cube(2))});
  REQUIRE(w.kind() == BodyKind::Oracle);

  auto g = gauge(w, hadamard2());
  const double sqrt2 = 1.4142135623730951;
  CHECK(g.lo() <= sqrt2);
  CHECK(g.hi() >= sqrt2);
  CHECK(g.hi() - g.lo() < 1e-4);

  auto gid = gauge(w, qvec({"1", "0", "0", "1"}));
  CHECK(gid.lo() <= 1.0);
  CHECK(gid.hi() >= 1.0);
  CHECK(gid.hi() - gid.lo() < 1e-4);

  // support is the dual norm: gamma2*(identity) = 2
  auto sid = support(w, qvec({"1", "0", "0", "1"}));
  CHECK(sid.lo() <= 2.0);
  CHECK(sid.hi() >= 2.0);
  CHECK(sid.hi() - sid.lo() < 1e-4);
}

TEST_CASE("omega2 sits between eps and pi") {
  std::vector<Body> factors{Body(cube(2)), Body(cube(2))};
  Body pi_body = pi_product(factors);
  Body eps_body = eps_product(factors);
  Body w = omega2_product(factors);
  SeededRng rng(17);
  for (int t = 0; t < 4; ++t) {
    VectorXq u = rng.vector(4, 3, 2);
    double eps_v = to_double(gauge(eps_body, u).rational());
    double pi_v = to_double(gauge(pi_body, u).rational());
    auto om = gauge(w, u);
    CHECK(om.hi() >= eps_v - 1e-9);
    CHECK(om.lo() <= pi_v + 1e-9);
  }
}

TEST_CASE("pi_inj of cubes reproduces the pi product") {
  std::vector<Body> factors{Body(cube(2)), Body(cube(2))};
  Body inj = pi_inj_product(factors);
  Body pi_body = pi_product(factors);
  REQUIRE(inj.kind() == BodyKind::Oracle);
  CHECK(inj.as_oracle().exact);
  SeededRng rng(29);
  for (int t = 0; t < 4; ++t) {
    VectorXq u = rng.vector(4, 3, 2);
    CHECK(gauge(inj, u).rational() == gauge(pi_body, u).rational());
    CHECK(support(inj, u).rational() == support(pi_body, u).rational());
  }
}

TEST_CASE("eps_proj of cross-polytopes reproduces the eps product") {
  std::vector<Body> factors{Body(cross_polytope(2)), Body(cross_polytope(2))};
  Body proj = eps_proj_product(factors);
  Body eps_body = eps_product(factors);
  REQUIRE(proj.kind() == BodyKind::Oracle);
  CHECK(proj.as_oracle().exact);
  SeededRng rng(31);
  for (int t = 0; t < 4; ++t) {
    VectorXq u = rng.vector(4, 3, 2);
    CHECK(gauge(proj, u).rational() == gauge(eps_body, u).rational());
    CHECK(support(proj, u).rational() == support(eps_body, u).rational());
  }
}

TEST_CASE("hull gauges sandwich between eps and pi on mixed factors") {
  std::vector<Body> factors{Body(cross_polytope(2)), Body(cube(2))};
  Body pi_body = pi_product(factors);
  Body eps_body = eps_product(factors);
  Body inj = pi_inj_product(factors);
  Body proj = eps_proj_product(factors);
  SeededRng rng(41);
  for (int t = 0; t < 5; ++t) {
    VectorXq u = rng.vector(4, 3, 2);
    Rational ge = gauge(eps_body, u).rational();
    Rational gp = gauge(pi_body, u).rational();
    Rational gi = gauge(inj, u).rational();
    Rational gq = gauge(proj, u).rational();
    CHECK(ge <= gi);
    CHECK(gi <= gp);
    CHECK(ge <= gq);
    CHECK(gq <= gp);
  }
}

TEST_CASE("sections stay exact per kind") {
  MatrixXq basis(3, 2);
  basis << 1, 0, 0, 1, 0, 0;
  Body sliced = section_body(Body(cube(3)), basis);
  REQUIRE(sliced.kind() == BodyKind::HPolytope);
  CHECK(sliced.as_h().normals().size() == 2);

  MatrixXq diag(2, 1);
  diag << 1, 1;
  Body seg = section_body(Body(cube(2)), diag);
  REQUIRE(seg.kind() == BodyKind::HPolytope);
  CHECK(gauge(seg, qvec({"1"})).rational() == 1);

  Body ball = section_body(Body(euclidean_ball(3)), basis);
  REQUIRE(ball.kind() == BodyKind::Ellipsoid);
  CHECK(ball.as_e().q_exact() == MatrixXq::Identity(2, 2));

  Body vsec = section_body(Body(cross_polytope(3)), basis);
  REQUIRE(vsec.kind() == BodyKind::Oracle);
  CHECK(vsec.as_oracle().exact);
  CHECK(gauge(vsec, qvec({"1/2", "1/2"})).rational() == 1);
  CHECK(support(vsec, qvec({"1", "0"})).rational() == 1);

  // section of a V-polytope agrees with sectioning the same body in H-form
  Body cross_h(HPolytope(3, normal_classes(Body(cross_polytope(3)))));
  Body href = section_body(cross_h, basis);
  SUBCASE("V-section matches the polar route") {
    SeededRng rng(7);
    for (int t = 0; t < 3; ++t) {
      VectorXq x = rng.vector(2);
      CHECK(gauge(vsec, x).rational() == gauge(href, x).rational());
    }
  }
}

TEST_CASE("images stay exact per kind") {
  MatrixXq proj(2, 3);
  proj << 1, 0, 0, 0, 1, 0;
  Body v = image_body(Body(cross_polytope(3)), proj);
  REQUIRE(v.kind() == BodyKind::VPolytope);
  CHECK(v.as_v().generators().size() == 2);  // e3 maps to 0 and is dropped

  Body h = image_body(Body(cube(3)), proj);  // shadow of the cube is a square
  REQUIRE(h.kind() == BodyKind::VPolytope);
  CHECK(gauge(h, qvec({"1", "1"})).rational() == 1);

  MatrixXq scale(2, 2);
  scale << 1, 0, 0, 2;
  Body e = image_body(Body(euclidean_ball(2)), scale);
  REQUIRE(e.kind() == BodyKind::Ellipsoid);
  MatrixXq expected(2, 2);
  expected << 1, 0, 0, Rational(1, 4);
  CHECK(e.as_e().q_exact() == expected);
}

TEST_CASE("section and image respect the duality of restriction and projection") {
  // (P n F)^polar within F = projection onto F of P^polar, for F a coordinate plane
  MatrixXq basis(3, 2);
  basis << 1, 0, 0, 1, 0, 0;
  SeededRng rng(53);
  VPolytope p = rng.vpolytope(3, 5);
  Body body(p);
  Body lhs = section_body(body, basis);                      // oracle
  Body rhs = image_body(polar(body), basis.transpose());     // V-polytope
  for (int t = 0; t < 4; ++t) {
    VectorXq x = rng.vector(2);
    CHECK(gauge(lhs, x).rational() == support(Body(rhs.as_v()), x).rational());
  }
}

TEST_CASE("budget guards reject oversized constructions") {
  CHECK_THROWS_AS(pi_inj_product({Body(cube(8)), Body(cube(7))}), BudgetError);
  std::vector<Body> three{Body(cross_polytope(17)), Body(cross_polytope(17)),
                          Body(cross_polytope(17))};
  CHECK_THROWS_AS(pi_product(three), BudgetError);
  CHECK_THROWS_AS(omega2_product({Body(cube(17)), Body(cube(17))}), BudgetError);
}

TEST_CASE("product kind names round-trip") {
  for (ProductKind k : {ProductKind::Pi, ProductKind::Eps, ProductKind::Hilbert2,
                        ProductKind::Omega2, ProductKind::PiInj, ProductKind::EpsProj})
    CHECK(parse_product_kind(product_kind_name(k)) == k);
  CHECK_THROWS_AS(parse_product_kind("nuclear"), ParseError);
}
