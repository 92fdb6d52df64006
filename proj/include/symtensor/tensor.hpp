#pragma once

#include "symtensor/body.hpp"

namespace symtensor {

// Row-major indexing over an order-l tensor space R^{d_1} (x) ... (x) R^{d_l}.
struct TensorShape {
  std::vector<Index> dims;

  TensorShape() = default;
  explicit TensorShape(std::vector<Index> d) : dims(std::move(d)) {}

  Index order() const { return static_cast<Index>(dims.size()); }
  Index total() const;
  Index flat(const std::vector<Index>& multi) const;
  std::vector<Index> unflat(Index flat_index) const;
};

enum class ProductKind { Pi, Eps, Hilbert2, Omega2, PiInj, EpsProj };

std::string product_kind_name(ProductKind kind);
ProductKind parse_product_kind(const std::string& name);

// Kronecker products, row-major: (a (x) b)[i*nb + j] = a[i] b[j].
VectorXq kron(const VectorXq& a, const VectorXq& b);
VectorXq kron(const std::vector<VectorXq>& factors);
MatrixXq kron(const MatrixXq& a, const MatrixXq& b);
MatrixXq kron(const std::vector<MatrixXq>& factors);
MatrixXd kron(const MatrixXd& a, const MatrixXd& b);

inline constexpr Index kGeneratorBudget = 4096;

// conv of the Kronecker products of generators; factors need V-representations
// (H-polytopes go through facet enumeration).  Generators are LP-reduced;
// raw/reduced class counts land in `prov`.
Body pi_product(const std::vector<Body>& factors, Provenance* prov = nullptr);

// polar of the pi product of the polars; factors need polar V-representations.
// Result is an H-polytope whose facet normals are Kronecker products of the
// factors' facet normals.
Body eps_product(const std::vector<Body>& factors, Provenance* prov = nullptr);

// Kronecker product of ellipsoid shape matrices; exact when every factor is.
Body hilbert2_product(const std::vector<Body>& factors, Provenance* prov = nullptr);

// Oracle body with certified-interval gauge (gamma2 of the polar-generator
// Gram matrix); l = 2, polytope or ellipsoid factors.
Body omega2_product(const std::vector<Body>& factors, Provenance* prov = nullptr);

// Injective hull of pi: both factors isometrically facet-embedded into cubes,
// the pi product taken there, the result restricted back.  Exact LP gauge.
Body pi_inj_product(const std::vector<Body>& factors, Provenance* prov = nullptr);

// Projective hull of eps: factors written as quotients of cross-polytopes,
// the eps product pushed forward.  Exact LP gauge.
Body eps_proj_product(const std::vector<Body>& factors, Provenance* prov = nullptr);

// (x)_alpha' := polar of the alpha product of the polars.
Body dual_product(ProductKind kind, const std::vector<Body>& factors,
                  Provenance* prov = nullptr);

// Dispatch helper: `dual` selects dual_product(kind, ...).
Body make_product(ProductKind kind, bool dual, const std::vector<Body>& factors,
                  Provenance* prov = nullptr);

// Section by the column span of `basis` (d x k, full column rank, exact).
// Coordinates are w.r.t. the given basis columns.  H-polytopes and ellipsoids
// section exactly into the same kind; V-polytopes become exact LP oracles.
Body section_body(const Body& body, const MatrixXq& basis, Provenance* prov = nullptr);

// Image under a surjective map (k x d).  V-polytopes map exactly; H-polytopes
// go through vertex enumeration; ellipsoids map exactly via (T Q^-1 T')^-1.
Body image_body(const Body& body, const MatrixXq& map, Provenance* prov = nullptr);

}  // namespace symtensor
