#include "symtensor/norms.hpp"

#include "symtensor/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <sstream>

namespace symtensor {

MatrixXq tensor_matrix(const VectorXq& u, Index d1, Index d2) {
  if (u.size() != d1 * d2) throw DimensionError("tensor_matrix: size mismatch");
  MatrixXq out(d1, d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d2; ++j) out(i, j) = u[i * d2 + j];
  return out;
}

VectorXq tensor_vector(const MatrixXq& u_mat) {
  VectorXq out(u_mat.rows() * u_mat.cols());
  for (Index i = 0; i < u_mat.rows(); ++i)
    for (Index j = 0; j < u_mat.cols(); ++j) out[i * u_mat.cols() + j] = u_mat(i, j);
  return out;
}

namespace {

void require_pair(const VectorXq& u, const std::vector<Body>& factors, const char* what) {
  if (factors.size() != 2)
    throw DimensionError(std::string(what) + ": implemented for exactly 2 factors");
  if (u.size() != factors[0].dim() * factors[1].dim())
    throw DimensionError(std::string(what) + ": tensor size mismatch");
}

// support of the factor's polar at x: exact rational |.|-max for polytopes,
// sqrt of an exact quadratic form for exact ellipsoids
GaugeValue polar_support(const Body& f, const VectorXq& x) { return gauge(f, x); }

MatrixXd cholesky_factor(const Body& f) {
  Eigen::LLT<MatrixXd> llt(f.as_e().q());
  if (llt.info() != Eigen::Success)
    throw DegenerateInputError("ellipsoid shape matrix not positive definite");
  return MatrixXd(llt.matrixL());
}

}  // namespace

NormReport eps_norm(const VectorXq& u, const std::vector<Body>& factors) {
  require_pair(u, factors, "eps_norm");
  const Body& f1 = factors[0];
  const Body& f2 = factors[1];
  const Index d1 = f1.dim();
  const Index d2 = f2.dim();
  MatrixXq umat = tensor_matrix(u, d1, d2);
  NormReport report;
  report.norm = "eps";

  if (f1.is_polytope() && f2.is_polytope()) {
    auto vs = normal_classes(f1);
    auto ws = normal_classes(f2);
    Rational best(0);
    size_t bi = 0, bj = 0;
    for (size_t i = 0; i < vs.size(); ++i) {
      VectorXq row = umat.transpose() * vs[i];
      for (size_t j = 0; j < ws.size(); ++j) {
        Rational val = row.dot(ws[j]);
        if (val < 0) val = -val;
        if (val > best) {
          best = val;
          bi = i;
          bj = j;
        }
      }
    }
    report.value = GaugeValue::exact(best);
    std::ostringstream os;
    os << "max |<u, v (x) w>| over " << vs.size() << "x" << ws.size()
       << " polar class pairs, attained at (" << bi << "," << bj << ")";
    report.certificate = os.str();
    return report;
  }

  if (f1.is_polytope() != f2.is_polytope()) {
    const bool first_poly = f1.is_polytope();
    const Body& poly = first_poly ? f1 : f2;
    const Body& ell = first_poly ? f2 : f1;
    auto gens = normal_classes(poly);
    // fixing the polytope-side generator leaves a euclidean support value
    GaugeValue best;
    size_t bi = 0;
    bool have = false;
    for (size_t i = 0; i < gens.size(); ++i) {
      VectorXq x = first_poly ? VectorXq(umat.transpose() * gens[i]) : VectorXq(umat * gens[i]);
      GaugeValue s = polar_support(ell, x);
      if (!have || s.hi() > best.hi() || (s.is_exact() && best.is_exact() &&
                                          s.rational() > best.rational())) {
        best = s;
        bi = i;
        have = true;
      }
    }
    if (!have) throw DegenerateInputError("eps_norm: polytope factor has no facets");
    report.value = best;
    std::ostringstream os;
    os << "max over " << gens.size() << " polytope polar classes of the ellipsoid support, "
       << "attained at class " << bi;
    report.certificate = os.str();
    return report;
  }

  if (f1.kind() == BodyKind::Ellipsoid && f2.kind() == BodyKind::Ellipsoid) {
    MatrixXd l1 = cholesky_factor(f1);
    MatrixXd l2 = cholesky_factor(f2);
    MatrixXd core = l1.transpose() * to_double_matrix(umat) * l2;
    Eigen::JacobiSVD<MatrixXd> svd(core);
    const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
    const double slop = 1e-9 * smax + 1e-300;
    report.value = GaugeValue::interval(std::max(0.0, smax - slop), smax + slop);
    report.certificate = "sigma_max of L1' U L2 (Cholesky factors of the shape matrices)";
    return report;
  }

  throw RepresentationError("eps_norm: factors must be polytopes or ellipsoids");
}

NormReport pi_norm(const VectorXq& u, const std::vector<Body>& factors) {
  require_pair(u, factors, "pi_norm");
  if (!factors[0].is_polytope() || !factors[1].is_polytope())
    throw RepresentationError("pi_norm: exact LP form needs polytope factors");
  const Index d1 = factors[0].dim();
  const Index d2 = factors[1].dim();
  auto xs = vertex_classes(factors[0]);
  auto ys = vertex_classes(factors[1]);
  const Index k1 = static_cast<Index>(xs.size());
  const Index k2 = static_cast<Index>(ys.size());
  if (k1 * k2 > kGeneratorBudget)
    throw BudgetError("pi_norm: more than " + std::to_string(kGeneratorBudget) +
                      " rank-one atom classes");
  MatrixXq w(d1 * d2, k1 * k2);
  for (Index i = 0; i < k1; ++i)
    for (Index j = 0; j < k2; ++j)
      w.col(i * k2 + j) = kron(xs[static_cast<size_t>(i)], ys[static_cast<size_t>(j)]);
  auto sol = lp_min_l1(w, u);
  if (sol.status != LpStatus::Optimal)
    throw SolverError("pi_norm: decomposition LP failed on spanning atoms");

  // substitution recheck of both certificates
  VectorXq coeff = sol.x.head(k1 * k2) - sol.x.tail(k1 * k2);
  if (w * coeff != u) throw SolverError("pi_norm: primal decomposition does not reproduce u");
  Rational mass(0);
  Index atoms = 0;
  for (Index c = 0; c < coeff.size(); ++c) {
    if (coeff[c] != 0) ++atoms;
    mass += coeff[c] < 0 ? Rational(-coeff[c]) : coeff[c];
  }
  if (mass != sol.objective) throw SolverError("pi_norm: mass does not match LP objective");
  Rational dual_max(0);
  for (Index c = 0; c < w.cols(); ++c) {
    Rational v = w.col(c).dot(sol.dual);
    if (v < 0) v = -v;
    if (v > dual_max) dual_max = v;
  }
  if (dual_max > 1 || sol.dual.dot(u) != sol.objective)
    throw SolverError("pi_norm: dual certificate failed recheck");

  NormReport report;
  report.norm = "pi";
  report.value = GaugeValue::exact(sol.objective);
  std::ostringstream os;
  os << "decomposition over " << k1 * k2 << " atom classes with " << atoms
     << " atoms, total mass " << format_rational(sol.objective)
     << "; dual functional rechecked: max |<y, x (x) y>| = " << format_rational(dual_max)
     << " <= 1 and <y, u> equals the mass";
  report.certificate = os.str();
  return report;
}

NormReport omega2_norm(const VectorXq& u, const std::vector<Body>& factors) {
  require_pair(u, factors, "omega2_norm");
  Body product = omega2_product(factors);
  GaugeValue g = gauge(product, u);
  NormReport report;
  report.norm = "omega2";
  report.value = g;
  std::ostringstream os;
  if (g.is_exact()) {
    os << "zero tensor";
  } else {
    os << "gamma2 of the polar-pair Gram matrix in [" << format_double(g.lo()) << ", "
       << format_double(g.hi()) << "] (patched primal factorization / shifted dual)";
  }
  report.certificate = os.str();
  return report;
}

NormReport tensor_norm(const std::string& norm, const VectorXq& u,
                       const std::vector<Body>& factors) {
  if (norm == "eps") return eps_norm(u, factors);
  if (norm == "pi") return pi_norm(u, factors);
  if (norm == "omega2") return omega2_norm(u, factors);
  throw ParseError("unknown tensor norm '" + norm + "' (eps | pi | omega2)");
}

RatioExperiment grothendieck_experiment(Index d1, Index d2, int samples, unsigned long seed) {
  if (d1 < 1 || d2 < 1) throw DimensionError("grothendieck_experiment: dims must be >= 1");
  std::vector<Body> factors{Body(cube(d1)), Body(cube(d2))};
  RatioExperiment exp;
  exp.numerator_norm = "pi";
  exp.denominator_norm = "omega2";
  exp.d1 = d1;
  exp.d2 = d2;

  std::vector<std::pair<std::string, VectorXq>> inputs;
  inputs.emplace_back("identity", tensor_vector(MatrixXq::Identity(d1, d2)));
  if (d1 >= 2 && d2 >= 2) {
    MatrixXq h = MatrixXq::Zero(d1, d2);
    h(0, 0) = 1;
    h(0, 1) = 1;
    h(1, 0) = 1;
    h(1, 1) = -1;
    inputs.emplace_back("hadamard2", tensor_vector(h));
  }
  SeededRng rng(seed);
  for (int k = 0; k < samples; ++k) {
    VectorXq u = (k % 2 == 0) ? rng.sign_vector(d1 * d2) : rng.vector(d1 * d2, 3, 2);
    if (u.isZero(0)) u = VectorXq::Unit(d1 * d2, 0);
    inputs.emplace_back("seeded:" + std::to_string(k), std::move(u));
  }

  for (auto& [label, u] : inputs) {
    NormReport p = pi_norm(u, factors);
    NormReport o = omega2_norm(u, factors);
    RatioSample sample;
    sample.u = u;
    sample.label = label;
    sample.numerator = {p.value.lo(), p.value.hi()};
    sample.denominator = {o.value.lo(), o.value.hi()};
    if (o.value.hi() <= 0.0) continue;  // zero tensor
    sample.ratio_lo = sample.numerator.lo / sample.denominator.hi;
    sample.ratio_hi = sample.denominator.lo > 0.0
                          ? sample.numerator.hi / sample.denominator.lo
                          : std::numeric_limits<double>::infinity();
    if (sample.ratio_lo > exp.max_ratio_lo) {
      exp.max_ratio_lo = sample.ratio_lo;
      exp.argmax_label = sample.label;
    }
    exp.max_ratio_hi = std::max(exp.max_ratio_hi, sample.ratio_hi);
    exp.samples.push_back(std::move(sample));
  }
  return exp;
}

}  // namespace symtensor
