#include "symtensor/symmetry.hpp"

#include "symtensor/tensor.hpp"

namespace symtensor {

namespace {

bool maps_classes_to_themselves(const std::vector<VectorXq>& classes, const MatrixXq& g) {
  std::vector<VectorXq> mapped;
  mapped.reserve(classes.size());
  for (const auto& v : classes) mapped.push_back(g * v);
  return canonicalize_pointset(std::move(mapped)) == classes;
}

}  // namespace

bool is_symmetry(const Body& body, const MatrixXq& g) {
  if (g.rows() != body.dim() || g.cols() != body.dim())
    throw DimensionError("is_symmetry: map shape must match the body dimension");
  switch (body.kind()) {
    case BodyKind::VPolytope:
      return maps_classes_to_themselves(body.as_v().generators(), g);
    case BodyKind::HPolytope: {
      // g P = P iff g^-T permutes the facet normals
      MatrixXq ginv_t = rational_inverse(g).transpose();
      return maps_classes_to_themselves(body.as_h().normals(), ginv_t);
    }
    case BodyKind::Ellipsoid: {
      const auto& e = body.as_e();
      if (e.exact()) return MatrixXq(g.transpose() * e.q_exact() * g) == e.q_exact();
      MatrixXd gd = to_double_matrix(g);
      return (gd.transpose() * e.q() * gd - e.q()).cwiseAbs().maxCoeff() < 1e-9;
    }
    case BodyKind::Oracle:
      throw RepresentationError("is_symmetry: oracle bodies have no exact symmetry test");
  }
  throw Error("unknown body kind");
}

Index commutant_dimension(const std::vector<MatrixXq>& gens) {
  if (gens.empty()) throw DimensionError("commutant_dimension: no generators");
  const Index d = gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != d || g.cols() != d)
      throw DimensionError("commutant_dimension: generators must share one square shape");
  MatrixXq eye = MatrixXq::Identity(d, d);
  MatrixXq stacked(static_cast<Index>(gens.size()) * d * d, d * d);
  Index row = 0;
  for (const auto& g : gens) {
    // row-major: vec(A g) = (I (x) g') vec(A), vec(g A) = (g (x) I) vec(A)
    stacked.block(row, 0, d * d, d * d) =
        kron(eye, MatrixXq(g.transpose())) - kron(g, eye);
    row += d * d;
  }
  return d * d - rational_rank(stacked);
}

bool enough_symmetries(const std::vector<MatrixXq>& gens) {
  return commutant_dimension(gens) == 1;
}

std::vector<MatrixXq> signed_permutation_generators(Index d) {
  if (d < 1) throw DimensionError("signed_permutation_generators: d must be >= 1");
  std::vector<MatrixXq> gens;
  MatrixXq flip = MatrixXq::Identity(d, d);
  flip(0, 0) = -1;
  gens.push_back(flip);
  if (d >= 2) {
    MatrixXq swap = MatrixXq::Identity(d, d);
    swap(0, 0) = swap(1, 1) = 0;
    swap(0, 1) = swap(1, 0) = 1;
    gens.push_back(swap);
  }
  if (d >= 3) {
    MatrixXq cycle = MatrixXq::Zero(d, d);
    for (Index i = 0; i < d; ++i) cycle((i + 1) % d, i) = 1;
    gens.push_back(cycle);
  }
  return gens;
}

std::vector<MatrixXq> kron_pairs(const std::vector<MatrixXq>& a,
                                 const std::vector<MatrixXq>& b) {
  if (a.empty() || b.empty()) throw DimensionError("kron_pairs: empty generator list");
  MatrixXq ea = MatrixXq::Identity(a[0].rows(), a[0].rows());
  MatrixXq eb = MatrixXq::Identity(b[0].rows(), b[0].rows());
  std::vector<MatrixXq> out;
  out.reserve(a.size() + b.size());
  // one slot at a time: generator-with-generator pairs would only reach the
  // subgroup of words moving both slots in lockstep
  for (const auto& ga : a) out.push_back(kron(ga, eb));
  for (const auto& gb : b) out.push_back(kron(ea, gb));
  return out;
}

}  // namespace symtensor
