#include "symtensor/rng.hpp"

namespace symtensor {

long SeededRng::integer(long lo, long hi) {
  if (hi < lo) throw DimensionError("SeededRng::integer: empty range");
  const unsigned long span = static_cast<unsigned long>(hi - lo) + 1;
  return lo + static_cast<long>(gen_() % span);
}

Rational SeededRng::rational(long max_num, long max_den) {
  return Rational(Integer(integer(-max_num, max_num)), Integer(integer(1, max_den)));
}

Rational SeededRng::nonzero_rational(long max_num, long max_den) {
  for (;;) {
    Rational r = rational(max_num, max_den);
    if (r != 0) return r;
  }
}

VectorXq SeededRng::vector(Index d, long max_num, long max_den) {
  VectorXq v(d);
  for (Index i = 0; i < d; ++i) v[i] = rational(max_num, max_den);
  return v;
}

VectorXq SeededRng::sign_vector(Index d) {
  VectorXq v(d);
  for (Index i = 0; i < d; ++i) v[i] = (gen_() % 2) ? Rational(1) : Rational(-1);
  return v;
}

MatrixXq SeededRng::matrix(Index rows, Index cols, long max_num, long max_den) {
  MatrixXq m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rational(max_num, max_den);
  return m;
}

MatrixXq SeededRng::invertible_matrix(Index d, long max_num, long max_den) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    MatrixXq m = matrix(d, d, max_num, max_den);
    if (rational_rank(m) == d) return m;
  }
  throw SolverError("SeededRng::invertible_matrix: no invertible draw in 256 attempts");
}

VPolytope SeededRng::vpolytope(Index d, Index classes, long max_num, long max_den) {
  if (classes < d) throw DimensionError("SeededRng::vpolytope: need at least d classes");
  std::vector<VectorXq> gens;
  MatrixXq basis = invertible_matrix(d, max_num, max_den);
  for (Index i = 0; i < d; ++i) gens.push_back(basis.col(i));
  for (Index k = d; k < classes; ++k) {
    VectorXq g = vector(d, max_num, max_den);
    if (g.isZero(0)) g = VectorXq::Unit(d, k % d);
    gens.push_back(g);
  }
  return VPolytope(d, std::move(gens));
}

HPolytope SeededRng::hpolytope(Index d, Index classes, long max_num, long max_den) {
  VPolytope v = vpolytope(d, classes, max_num, max_den);
  return HPolytope(d, v.generators());
}

Ellipsoid SeededRng::ellipsoid(Index d, long max_num, long max_den) {
  MatrixXq a = matrix(d, d, max_num, max_den);
  MatrixXq q = a.transpose() * a + MatrixXq::Identity(d, d);
  return Ellipsoid(d, q);
}

}  // namespace symtensor
