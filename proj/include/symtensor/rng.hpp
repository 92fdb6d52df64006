#pragma once

#include "symtensor/body.hpp"

#include <random>

namespace symtensor {

// Deterministic corpus generator.  mt19937_64 has a standardized output
// sequence and draws are reduced by modulo, so corpora are identical across
// platforms and standard libraries for a fixed seed.
class SeededRng {
 public:
  explicit SeededRng(unsigned long seed) : gen_(seed) {}

  // uniform integer in [lo, hi]
  long integer(long lo, long hi);
  // numerator in [-max_num, max_num], denominator in [1, max_den]
  Rational rational(long max_num = 4, long max_den = 3);
  Rational nonzero_rational(long max_num = 4, long max_den = 3);
  VectorXq vector(Index d, long max_num = 4, long max_den = 3);
  VectorXq sign_vector(Index d);
  MatrixXq matrix(Index rows, Index cols, long max_num = 4, long max_den = 3);
  // retries until rational_rank == d
  MatrixXq invertible_matrix(Index d, long max_num = 4, long max_den = 3);

  // `classes` antipodal generator classes spanning R^d (retried until they
  // span); includes +-e_i scaled so the body is nondegenerate
  VPolytope vpolytope(Index d, Index classes, long max_num = 4, long max_den = 3);
  HPolytope hpolytope(Index d, Index classes, long max_num = 4, long max_den = 3);
  // Q = A' A + I with random A, exact positive definite
  Ellipsoid ellipsoid(Index d, long max_num = 2, long max_den = 2);

 private:
  std::mt19937_64 gen_;
};

}  // namespace symtensor
