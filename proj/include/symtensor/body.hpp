#pragma once

#include "symtensor/linprog.hpp"
#include "symtensor/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace symtensor {

// Construction metadata carried by derived bodies (products, hulls, sections).
// Deterministic: attrs keep insertion order.
struct Provenance {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> attrs;

  void set(const std::string& key, const std::string& value);
  const std::string* find(const std::string& key) const;
};

// One generator per antipodal pair, first nonzero coordinate positive,
// entries canonical rationals, list sorted lexicographically and deduped.
VectorXq antipodal_rep(const VectorXq& v);
std::vector<VectorXq> canonicalize_pointset(std::vector<VectorXq> points, bool drop_zero = true);

class VPolytope {
 public:
  VPolytope(Index dim, std::vector<VectorXq> generators);

  Index dim() const { return dim_; }
  const std::vector<VectorXq>& generators() const { return gens_; }
  // signed vertex count (2 per stored class)
  Index vertex_count() const { return 2 * static_cast<Index>(gens_.size()); }

 private:
  Index dim_;
  std::vector<VectorXq> gens_;
};

class HPolytope {
 public:
  HPolytope(Index dim, std::vector<VectorXq> normals);

  Index dim() const { return dim_; }
  // one normal per facet pair: |<a_i, x>| <= 1
  const std::vector<VectorXq>& normals() const { return normals_; }
  Index facet_count() const { return 2 * static_cast<Index>(normals_.size()); }

 private:
  Index dim_;
  std::vector<VectorXq> normals_;
};

// { x : x' Q x <= 1 }, Q symmetric positive definite.  Exact ellipsoids carry
// a rational Q; floating ones only the double mirror.
class Ellipsoid {
 public:
  Ellipsoid(Index dim, MatrixXq q_exact);
  Ellipsoid(Index dim, MatrixXd q, double symmetry_tol = 1e-12);

  Index dim() const { return dim_; }
  bool exact() const { return exact_; }
  const MatrixXq& q_exact() const {
    if (!exact_) throw RepresentationError("ellipsoid has no exact shape matrix");
    return q_exact_;
  }
  const MatrixXd& q() const { return q_; }

 private:
  Index dim_;
  bool exact_;
  MatrixXq q_exact_;
  MatrixXd q_;
};

class Body;

// Serializable construction recipe for oracle-backed bodies: reloading a
// saved oracle re-runs the construction.
struct OracleRecipe {
  std::string kind;
  std::vector<Body> factors;
  std::vector<std::pair<std::string, std::string>> params;
};

// A body known only through gauge/support evaluators.  Closures must be
// re-entrant; `exact` says whether gauges come back rational or as intervals.
struct OracleBody {
  Index dim = 0;
  bool exact = false;
  std::function<GaugeValue(const VectorXq&)> gauge_fn;
  std::function<GaugeValue(const VectorXq&)> support_fn;
  Provenance prov;
  std::shared_ptr<const OracleRecipe> recipe;
};

enum class BodyKind { VPolytope, HPolytope, Ellipsoid, Oracle };

class Body {
 public:
  Body(VPolytope v) : rep_(std::move(v)) {}
  Body(HPolytope h) : rep_(std::move(h)) {}
  Body(Ellipsoid e) : rep_(std::move(e)) {}
  Body(OracleBody o) : rep_(std::move(o)) {}

  BodyKind kind() const { return static_cast<BodyKind>(rep_.index()); }
  Index dim() const;

  bool is_polytope() const {
    return kind() == BodyKind::VPolytope || kind() == BodyKind::HPolytope;
  }
  const VPolytope& as_v() const;
  const HPolytope& as_h() const;
  const Ellipsoid& as_e() const;
  const OracleBody& as_oracle() const;

  template <class Visitor>
  decltype(auto) visit(Visitor&& vis) const {
    return std::visit(std::forward<Visitor>(vis), rep_);
  }

 private:
  std::variant<VPolytope, HPolytope, Ellipsoid, OracleBody> rep_;
};

// Minkowski gauge g_P(x) = inf { t > 0 : x in tP }.  Exact rational for
// polytopes and exact oracles; certified interval otherwise.
GaugeValue gauge(const Body& body, const VectorXq& x);

// Support h_P(y) = sup { <y, x> : x in P } = gauge of the polar at y.
GaugeValue support(const Body& body, const VectorXq& y);

// Exact polarity for polytopes and exact ellipsoids; oracle bodies polarize
// by swapping gauge and support (bipolar theorem for closed symmetric bodies).
Body polar(const Body& body);

struct ContainsOptions {
  bool allow_sampled = false;  // permit sampled sub-certificates
  int samples = 64;
  unsigned long seed = 1;
};

struct ContainsResult {
  bool contained = false;
  bool certified = true;   // false when intervals were inconclusive or sampled
  bool sampled = false;
  std::optional<VectorXq> witness;  // point of `inner` with gauge > 1 in `outer`
  GaugeValue witness_gauge;
};

ContainsResult contains(const Body& outer, const Body& inner,
                        const ContainsOptions& opts = {});

// Drops generators lying in the symmetric hull of the others (one exact gauge
// LP per generator).  Input need not be canonical; output is.
std::vector<VectorXq> reduce_generators(std::vector<VectorXq> gens, Index dim);

// Facet normals (one per antipodal pair) of conv(+-gens), by exact
// enumeration of supporting hyperplanes through d affinely independent
// vertices.  Guarded: dim <= 12 and a combinatorial work budget.
std::vector<VectorXq> facet_enumeration(const std::vector<VectorXq>& gens, Index dim);

// V-representation of any polytope body (enumerates facets of the polar for
// H-polytopes); throws RepresentationError for ellipsoids/oracles.
std::vector<VectorXq> vertex_classes(const Body& body);

// Facet-normal classes of any polytope body (enumerates for V-polytopes).
std::vector<VectorXq> normal_classes(const Body& body);

// Convenience constructors for the standard unit balls.
VPolytope cross_polytope(Index dim);              // B_1^d
HPolytope cube(Index dim);                        // B_inf^d
Ellipsoid euclidean_ball(Index dim);              // B_2^d
Body unit_ball(const std::string& p, Index dim);  // "1" | "2" | "inf"

}  // namespace symtensor
