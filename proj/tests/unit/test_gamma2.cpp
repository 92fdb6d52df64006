#include "symtensor/gamma2.hpp"

#include <doctest.h>

#include <Eigen/SVD>

#include <random>

using namespace symtensor;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_brackets(const Gamma2Result& res, double truth, double width) {
  CHECK(res.lo <= truth + 1e-12);
  CHECK(res.hi >= truth - 1e-12);
  CHECK(res.gap() < width);
  CHECK(res.lo >= 0.0);
}

MatrixXd seeded_matrix(Index r, Index c, unsigned long seed) {
  std::mt19937_64 gen(seed);
  MatrixXd m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      m(i, j) = static_cast<double>(static_cast<long>(gen() % 2001) - 1000) / 500.0;
  return m;
}

}  // namespace

TEST_CASE("gamma2 of identity and hadamard") {
  check_brackets(gamma2_bounds(MatrixXd::Identity(2, 2)), 1.0, 1e-5);

  MatrixXd h(2, 2);
  h << 1, 1, 1, -1;
  auto res = gamma2_bounds(h);
  check_brackets(res, kSqrt2, 1e-5);
  CHECK(res.converged);
}

TEST_CASE("gamma2 of a sign rank-one matrix is 1") {
  MatrixXd m(3, 2);
  m << 1, -1, -1, 1, 1, -1;  // s t' for s = (1,-1,1), t = (1,-1)
  check_brackets(gamma2_bounds(m), 1.0, 1e-5);
}

TEST_CASE("factor certificate reproduces the matrix") {
  MatrixXd h(2, 2);
  h << 1, 1, 1, -1;
  auto res = gamma2_bounds(h);
  REQUIRE(res.left.rows() == 2);
  REQUIRE(res.right.rows() == 2);
  MatrixXd prod = res.left * res.right.transpose();
  CHECK((prod - h).cwiseAbs().maxCoeff() < 1e-9);
  double row_max = res.left.rowwise().norm().maxCoeff();
  double col_max = res.right.rowwise().norm().maxCoeff();
  CHECK(row_max * col_max <= res.hi + 1e-9);
}

TEST_CASE("spectral-spectral side equals the largest singular value") {
  MatrixXd m = seeded_matrix(3, 3, 99);
  Eigen::JacobiSVD<MatrixXd> svd(m);
  double smax = svd.singularValues()[0];
  auto res = gamma2_bounds_sided(m, FactorSide::Spectral, FactorSide::Spectral);
  CHECK(res.lo <= smax + 1e-7);
  CHECK(res.hi >= smax - 1e-7);
  CHECK(res.gap() < 1e-4);
}

TEST_CASE("spectral-maxdiag side equals the largest column norm") {
  MatrixXd g(2, 3);
  g << 1, 0, 1, 0, 1, 1;
  auto res = gamma2_bounds_sided(g, FactorSide::Spectral, FactorSide::MaxDiag);
  CHECK(res.lo <= kSqrt2 + 1e-9);
  CHECK(res.hi >= kSqrt2 - 1e-9);
  CHECK(res.gap() < 1e-4);
}

TEST_CASE("gamma2 star of identity and hadamard") {
  auto id = gamma2_star_bounds(MatrixXd::Identity(2, 2));
  CHECK(id.lo <= 2.0 + 1e-12);
  CHECK(id.hi >= 2.0 - 1e-12);
  CHECK(id.gap() < 1e-4);

  MatrixXd h(2, 2);
  h << 1, 1, 1, -1;
  auto res = gamma2_star_bounds(h);
  const double truth = 2.0 * kSqrt2;
  CHECK(res.lo <= truth + 1e-12);
  CHECK(res.hi >= truth - 1e-12);
  CHECK(res.gap() < 1e-4);
}

TEST_CASE("primal-dual pairing <m, n> <= gamma2(m) gamma2*(n)") {
  for (unsigned long seed : {1UL, 2UL, 3UL}) {
    MatrixXd m = seeded_matrix(2, 3, seed);
    MatrixXd n = seeded_matrix(2, 3, seed + 100);
    auto gm = gamma2_bounds(m);
    auto gn = gamma2_star_bounds(n);
    double pairing = (m.array() * n.array()).sum();
    CHECK(pairing <= gm.hi * gn.hi + 1e-6);
  }
}

TEST_CASE("gamma2 scales linearly and respects the triangle inequality") {
  MatrixXd a = seeded_matrix(3, 2, 7);
  MatrixXd b = seeded_matrix(3, 2, 8);
  auto ga = gamma2_bounds(a);
  auto gb = gamma2_bounds(b);
  auto gs = gamma2_bounds(a + b);
  CHECK(gs.lo <= ga.hi + gb.hi + 1e-6);
  auto g2 = gamma2_bounds(2.0 * a);
  CHECK(g2.lo <= 2.0 * ga.hi + 1e-6);
  CHECK(g2.hi >= 2.0 * ga.lo - 1e-6);
}

TEST_CASE("degenerate shapes are handled") {
  auto zero = gamma2_bounds(MatrixXd::Zero(2, 2));
  CHECK(zero.lo == 0.0);
  CHECK(zero.hi == 0.0);

  MatrixXd one(1, 1);
  one << -3.0;
  auto res = gamma2_bounds(one);
  CHECK(res.lo <= 3.0 + 1e-9);
  CHECK(res.hi >= 3.0 - 1e-9);
  CHECK(res.gap() < 1e-4);
}
