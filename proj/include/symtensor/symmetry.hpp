#pragma once

#include "symtensor/body.hpp"

namespace symtensor {

// Exact test that the invertible map g preserves the body: permutes the
// vertex classes (V), the facet classes via the inverse transpose (H), or
// fixes the shape matrix (ellipsoid).
bool is_symmetry(const Body& body, const MatrixXq& g);

// dim { A : A g = g A for all g }, by the exact rank of the stacked Sylvester
// system (I (x) g' - g (x) I) vec(A) = 0.
Index commutant_dimension(const std::vector<MatrixXq>& gens);

// A group with scalar commutant acts irreducibly, which pins every invariant
// ellipsoid (hence Loewner and John) to a multiple of a single one.
bool enough_symmetries(const std::vector<MatrixXq>& gens);

// swap(0,1), the full cycle, and a sign flip of coordinate 0; these generate
// the signed permutations, the symmetry group of the cube and cross-polytope.
std::vector<MatrixXq> signed_permutation_generators(Index d);

// Product-body symmetries induced by the factors, one slot at a time:
// g (x) I for each generator of the first factor, I (x) h for the second.
// Together these generate the full product of the factor groups.
std::vector<MatrixXq> kron_pairs(const std::vector<MatrixXq>& a,
                                 const std::vector<MatrixXq>& b);

}  // namespace symtensor
