#pragma once

#include "symtensor/tensor.hpp"

namespace symtensor {

// Row-major reshape of u in R^{d1 d2} to the d1 x d2 matrix of the induced
// operator E_1^* -> E_2 (u acts by w -> U' w on the first slot's duals).
MatrixXq tensor_matrix(const VectorXq& u, Index d1, Index d2);
VectorXq tensor_vector(const MatrixXq& u_mat);

// One norm evaluation with its certificate.  `value` is exact for the LP
// norms (eps, pi) on polytope factors and a certified interval otherwise.
struct NormReport {
  std::string norm;
  GaugeValue value;
  bool certified = true;
  std::string certificate;  // human-readable recheck summary
};

// eps(u) = max over polar generator pairs of <u, v (x) w>; equals the gauge
// of u in the eps product.  Polytope factors give exact rationals; an
// ellipsoid factor contributes a euclidean norm (certified interval).
NormReport eps_norm(const VectorXq& u, const std::vector<Body>& factors);

// pi(u) = min total mass of a decomposition u = sum_k c_k x_k (x) y_k with
// x_k, y_k factor vertices; exact LP with a dual-feasibility certificate.
NormReport pi_norm(const VectorXq& u, const std::vector<Body>& factors);

// omega2(u) = gamma2 of the polar-pair Gram matrix; certified interval from
// the SDP bounds.  Gram size capped at 256 entries.
NormReport omega2_norm(const VectorXq& u, const std::vector<Body>& factors);

NormReport tensor_norm(const std::string& norm, const VectorXq& u,
                       const std::vector<Body>& factors);

// One sampled tensor in a Grothendieck-type ratio experiment.
struct RatioSample {
  VectorXq u;
  std::string label;       // "seeded:<k>" or a designated witness name
  Interval numerator;      // pi-type value
  Interval denominator;    // comparison value
  double ratio_lo = 0.0;   // certified lower bound on numerator/denominator
  double ratio_hi = 0.0;
};

struct RatioExperiment {
  std::string numerator_norm;
  std::string denominator_norm;
  Index d1 = 0, d2 = 0;
  std::vector<RatioSample> samples;
  double max_ratio_lo = 0.0;  // best certified lower bound seen
  double max_ratio_hi = 0.0;  // upper envelope over samples
  std::string argmax_label;
};

// Ratio pi(u)/omega2(u) on cube factors: random +-1 and small-rational
// tensors (seeded, deterministic) plus designated witnesses.  Bounded by the
// Grothendieck constant; kKgUpper is a safe published upper bound.
inline constexpr double kKgUpper = 1.78222;

RatioExperiment grothendieck_experiment(Index d1, Index d2, int samples, unsigned long seed);

}  // namespace symtensor
