#include <doctest.h>

#include "symtensor/rational.hpp"

using namespace symtensor;

TEST_CASE("parse_rational canonicalizes") {
  CHECK(parse_rational("3/9") == Rational(1, 3));
  CHECK(format_rational(parse_rational("3/9")) == "1/3");
  CHECK(format_rational(parse_rational("2/-4")) == "-1/2");
  CHECK(format_rational(parse_rational("-6/-9")) == "2/3");
  CHECK(format_rational(parse_rational("7")) == "7");
  CHECK(format_rational(parse_rational("-0/5")) == "0");
  CHECK(format_rational(parse_rational(" 1 / 2 ")) == "1/2");
}

TEST_CASE("parse_rational rejects junk") {
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
  CHECK_THROWS_AS(parse_rational("--3"), ParseError);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456.789, -2.5e300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("sqrt_interval brackets the root") {
  auto iv = sqrt_interval(Rational(2));
  CHECK(iv.lo <= 1.41421356237309504);
  CHECK(iv.hi >= 1.41421356237309504);
  CHECK(iv.width() < 1e-14);
  auto z = sqrt_interval(Rational(0));
  CHECK(z.lo == 0.0);
  auto four = sqrt_interval(Rational(4));
  CHECK(four.lo <= 2.0);
  CHECK(four.hi >= 2.0);
}

TEST_CASE("rational_rank with certificate") {
  MatrixXq m(3, 3);
  m << Rational(1), Rational(2), Rational(3),
       Rational(2), Rational(4), Rational(6),
       Rational(0), Rational(1), Rational(1);
  std::vector<Index> rows;
  CHECK(rational_rank(m, &rows) == 2);
  REQUIRE(rows.size() == 2);
  // certificate rows really are independent
  MatrixXq sub(2, 3);
  sub.row(0) = m.row(rows[0]);
  sub.row(1) = m.row(rows[1]);
  CHECK(rational_rank(sub) == 2);
}

TEST_CASE("rational_inverse and solve") {
  MatrixXq m(2, 2);
  m << Rational(2), Rational(1), Rational(1), Rational(2);
  MatrixXq inv = rational_inverse(m);
  CHECK((m * inv - MatrixXq::Identity(2, 2)).isZero(0));
  VectorXq rhs(2);
  rhs << Rational(1), Rational(1);
  VectorXq x = rational_solve(m, rhs);
  CHECK(x[0] == Rational(1, 3));
  CHECK(x[1] == Rational(1, 3));
  MatrixXq sing(2, 2);
  sing << Rational(1), Rational(2), Rational(2), Rational(4);
  CHECK_THROWS_AS(rational_inverse(sing), DegenerateInputError);
}

TEST_CASE("GaugeValue exact and interval forms") {
  auto e = GaugeValue::exact(Rational(2, 3));
  CHECK(e.is_exact());
  CHECK(e.rational() == Rational(2, 3));
  CHECK(e.lo() == doctest::Approx(2.0 / 3.0));
  auto iv = GaugeValue::interval(1.0, 1.5);
  CHECK_FALSE(iv.is_exact());
  CHECK(iv.mid() == doctest::Approx(1.25));
  CHECK_THROWS_AS(iv.rational(), RepresentationError);
}
