#include "symtensor/rng.hpp"
#include "symtensor/symmetry.hpp"
#include "symtensor/tensor.hpp"

#include <doctest.h>

using namespace symtensor;

TEST_CASE("signed permutations preserve the standard balls") {
  for (Index d : {2, 3}) {
    auto gens = signed_permutation_generators(d);
    for (const auto& g : gens) {
      CHECK(is_symmetry(Body(cube(d)), g));
      CHECK(is_symmetry(Body(cross_polytope(d)), g));
      CHECK(is_symmetry(Body(euclidean_ball(d)), g));
    }
  }
}

TEST_CASE("shears are not symmetries of the cube") {
  MatrixXq shear = MatrixXq::Identity(2, 2);
  shear(0, 1) = 1;
  CHECK(!is_symmetry(Body(cube(2)), shear));
  CHECK(!is_symmetry(Body(cross_polytope(2)), shear));
}

TEST_CASE("commutant of the full signed permutation group is scalar") {
  for (Index d : {2, 3, 4}) {
    auto gens = signed_permutation_generators(d);
    CHECK(commutant_dimension(gens) == 1);
    CHECK(enough_symmetries(gens));
  }
}

TEST_CASE("permutations alone leave a two-dimensional commutant") {
  // without sign flips the all-ones matrix also commutes
  auto gens = signed_permutation_generators(3);
  std::vector<MatrixXq> perms(gens.begin() + 1, gens.end());  // drop the flip
  CHECK(commutant_dimension(perms) == 2);
  CHECK(!enough_symmetries(perms));
}

TEST_CASE("a single rotation of order 4 has commutant dimension 2") {
  MatrixXq rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK(commutant_dimension({rot}) == 2);  // spans I and the rotation itself
}

TEST_CASE("product symmetries act on pi and eps products") {
  auto gens2 = signed_permutation_generators(2);
  auto gens4 = kron_pairs(gens2, gens2);
  Body pi_body = pi_product({Body(cube(2)), Body(cube(2))});
  Body eps_body = eps_product({Body(cross_polytope(2)), Body(cross_polytope(2))});
  for (const auto& g : gens4) {
    CHECK(is_symmetry(pi_body, g));
    CHECK(is_symmetry(eps_body, g));
  }
  CHECK(enough_symmetries(gens4));
}

TEST_CASE("swap of tensor slots is a symmetry of the square product") {
  // the flip u_ij -> u_ji preserves P (x) P for equal factors
  Index d = 2;
  MatrixXq flip = MatrixXq::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) flip(i * d + j, j * d + i) = 1;
  Body pi_body = pi_product({Body(cube(2)), Body(cube(2))});
  CHECK(is_symmetry(pi_body, flip));
}

TEST_CASE("symmetries transported by an invertible map") {
  SeededRng rng(19);
  MatrixXq t = rng.invertible_matrix(2);
  std::vector<VectorXq> gens;
  for (const auto& v : vertex_classes(Body(cube(2)))) gens.push_back(t * v);
  Body skewed(VPolytope(2, gens));
  MatrixXq tinv = rational_inverse(t);
  for (const auto& g : signed_permutation_generators(2)) {
    MatrixXq conj = t * g * tinv;
    CHECK(is_symmetry(skewed, conj));
  }
}
