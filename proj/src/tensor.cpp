#include "symtensor/tensor.hpp"

#include "symtensor/gamma2.hpp"

#include <Eigen/Cholesky>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace symtensor {

Index TensorShape::total() const {
  Index t = 1;
  for (Index d : dims) t *= d;
  return t;
}

Index TensorShape::flat(const std::vector<Index>& multi) const {
  if (static_cast<Index>(multi.size()) != order())
    throw DimensionError("TensorShape::flat: index order mismatch");
  Index f = 0;
  for (Index k = 0; k < order(); ++k) {
    if (multi[k] < 0 || multi[k] >= dims[k]) throw DimensionError("TensorShape::flat: out of range");
    f = f * dims[k] + multi[k];
  }
  return f;
}

std::vector<Index> TensorShape::unflat(Index flat_index) const {
  if (flat_index < 0 || flat_index >= total())
    throw DimensionError("TensorShape::unflat: out of range");
  std::vector<Index> multi(dims.size());
  for (Index k = order() - 1; k >= 0; --k) {
    multi[k] = flat_index % dims[k];
    flat_index /= dims[k];
  }
  return multi;
}

std::string product_kind_name(ProductKind kind) {
  switch (kind) {
    case ProductKind::Pi: return "pi";
    case ProductKind::Eps: return "eps";
    case ProductKind::Hilbert2: return "2";
    case ProductKind::Omega2: return "omega2";
    case ProductKind::PiInj: return "pi_inj";
    case ProductKind::EpsProj: return "eps_proj";
  }
  throw Error("unknown product kind");
}

ProductKind parse_product_kind(const std::string& name) {
  if (name == "pi") return ProductKind::Pi;
  if (name == "eps") return ProductKind::Eps;
  if (name == "2" || name == "hilbert2") return ProductKind::Hilbert2;
  if (name == "omega2") return ProductKind::Omega2;
  if (name == "pi_inj") return ProductKind::PiInj;
  if (name == "eps_proj") return ProductKind::EpsProj;
  throw ParseError("unknown product kind '" + name + "'");
}

VectorXq kron(const VectorXq& a, const VectorXq& b) {
  VectorXq out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    for (Index j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

VectorXq kron(const std::vector<VectorXq>& factors) {
  if (factors.empty()) throw DimensionError("kron: no factors");
  VectorXq out = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

MatrixXq kron(const MatrixXq& a, const MatrixXq& b) {
  MatrixXq out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXq kron(const std::vector<MatrixXq>& factors) {
  if (factors.empty()) throw DimensionError("kron: no factors");
  MatrixXq out = factors[0];
  for (size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

std::string dims_string(const std::vector<Body>& factors) {
  std::ostringstream os;
  for (size_t k = 0; k < factors.size(); ++k) {
    if (k) os << "x";
    os << factors[k].dim();
  }
  return os.str();
}

void require_factors(const std::vector<Body>& factors, size_t min_count, const char* what) {
  if (factors.size() < min_count)
    throw DimensionError(std::string(what) + ": needs at least " + std::to_string(min_count) +
                         " factors");
}

void require_two(const std::vector<Body>& factors, const char* what) {
  if (factors.size() != 2)
    throw DimensionError(std::string(what) + ": implemented for exactly 2 factors");
}

MatrixXq rows_matrix(const std::vector<VectorXq>& vecs, Index dim) {
  MatrixXq out(static_cast<Index>(vecs.size()), dim);
  for (Index i = 0; i < out.rows(); ++i) out.row(i) = vecs[static_cast<size_t>(i)].transpose();
  return out;
}

MatrixXq cols_matrix(const std::vector<VectorXq>& vecs, Index dim) {
  MatrixXq out(dim, static_cast<Index>(vecs.size()));
  for (Index j = 0; j < out.cols(); ++j) out.col(j) = vecs[static_cast<size_t>(j)];
  return out;
}

VectorXq vec_row(const MatrixXq& m) {
  VectorXq out(m.rows() * m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  return out;
}

MatrixXq unvec_row(const VectorXq& u, Index d1, Index d2) {
  if (u.size() != d1 * d2) throw DimensionError("unvec_row: size mismatch");
  MatrixXq out(d1, d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d2; ++j) out(i, j) = u[i * d2 + j];
  return out;
}

// Columns are kron(s, t) over sign vectors with s[0] = t[0] = +1; one column
// per antipodal class of rank-one sign matrices.
MatrixXq sign_class_columns(Index m1, Index m2) {
  if (m1 + m2 - 2 > 12)
    throw BudgetError("sign classes: 2^" + std::to_string(m1 + m2 - 2) + " columns");
  const Index n1 = Index(1) << (m1 - 1);
  const Index n2 = Index(1) << (m2 - 1);
  MatrixXq out(m1 * m2, n1 * n2);
  VectorXq s(m1), t(m2);
  for (Index a = 0; a < n1; ++a) {
    s[0] = 1;
    for (Index i = 1; i < m1; ++i) s[i] = ((a >> (i - 1)) & 1) ? Rational(-1) : Rational(1);
    for (Index b = 0; b < n2; ++b) {
      t[0] = 1;
      for (Index j = 1; j < m2; ++j) t[j] = ((b >> (j - 1)) & 1) ? Rational(-1) : Rational(1);
      out.col(a * n2 + b) = kron(s, t);
    }
  }
  return out;
}

// All Kronecker products over one antipodal class per factor; kron maps class
// tuples to result classes bijectively, so this is the full class list.
std::vector<VectorXq> kron_classes(const std::vector<std::vector<VectorXq>>& factor_classes,
                                   const char* what) {
  Index count = 1;
  for (const auto& fc : factor_classes) {
    count *= static_cast<Index>(fc.size());
    if (count > kGeneratorBudget)
      throw BudgetError(std::string(what) + ": more than " + std::to_string(kGeneratorBudget) +
                        " generator classes");
  }
  std::vector<VectorXq> out;
  out.reserve(static_cast<size_t>(count));
  const size_t l = factor_classes.size();
  std::vector<size_t> idx(l, 0);
  while (true) {
    std::vector<VectorXq> pick(l);
    for (size_t k = 0; k < l; ++k) pick[k] = factor_classes[k][idx[k]];
    out.push_back(kron(pick));
    size_t k = l;
    while (k > 0) {
      --k;
      if (++idx[k] < factor_classes[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

void record_product(Provenance* prov, const std::string& kind, const std::vector<Body>& factors) {
  if (!prov) return;
  prov->kind = kind;
  prov->set("order", std::to_string(factors.size()));
  prov->set("dims", dims_string(factors));
}

std::shared_ptr<OracleRecipe> make_recipe(const std::string& kind,
                                          const std::vector<Body>& factors) {
  auto recipe = std::make_shared<OracleRecipe>();
  recipe->kind = kind;
  recipe->factors = factors;
  return recipe;
}

// Shared data for the omega2 gauge/support closures.  Polytope factors enter
// through their facet-normal rows (J); ellipsoid factors through a Cholesky
// factor of the shape matrix (polar generators are L z, |z|_2 <= 1).
struct Omega2Data {
  Index d1 = 0, d2 = 0;
  bool poly1 = false, poly2 = false;
  MatrixXd row_map;  // G = row_map * U * col_map
  MatrixXd col_map;
  FactorSide row_side = FactorSide::MaxDiag;
  FactorSide col_side = FactorSide::MaxDiag;
  bool invertible = false;  // both J square invertible: support via gamma2*
  MatrixXq j1_inv_t, j2_inv;
  Gamma2Options opts;
};

GaugeValue gamma2_interval(const Gamma2Result& res) {
  // extra relative slop covers the rational -> double rounding of the input
  const double slop = 1e-11 * std::abs(res.hi) + 1e-300;
  return GaugeValue::interval(std::max(0.0, res.lo - slop), res.hi + slop);
}

Omega2Data build_omega2(const std::vector<Body>& factors) {
  Omega2Data data;
  data.d1 = factors[0].dim();
  data.d2 = factors[1].dim();
  MatrixXq j1, j2;
  for (int side = 0; side < 2; ++side) {
    const Body& f = factors[static_cast<size_t>(side)];
    MatrixXd map;
    bool poly = false;
    if (f.kind() == BodyKind::Ellipsoid) {
      const MatrixXd& q = f.as_e().q();
      Eigen::LLT<MatrixXd> llt(q);
      if (llt.info() != Eigen::Success)
        throw DegenerateInputError("omega2: ellipsoid shape matrix not positive definite");
      map = side == 0 ? MatrixXd(llt.matrixL().transpose()) : MatrixXd(llt.matrixL());
    } else if (f.is_polytope()) {
      poly = true;
      auto normals = normal_classes(f);
      MatrixXq j = rows_matrix(normals, f.dim());
      map = side == 0 ? to_double_matrix(j) : MatrixXd(to_double_matrix(j).transpose());
      (side == 0 ? j1 : j2) = j;
    } else {
      throw RepresentationError("omega2: factors must be polytopes or ellipsoids");
    }
    if (side == 0) {
      data.poly1 = poly;
      data.row_map = map;
      data.row_side = poly ? FactorSide::MaxDiag : FactorSide::Spectral;
    } else {
      data.poly2 = poly;
      data.col_map = map;
      data.col_side = poly ? FactorSide::MaxDiag : FactorSide::Spectral;
    }
  }
  if (data.row_map.rows() * data.col_map.cols() > 256)
    throw BudgetError("omega2: Gram matrix larger than 256 entries");
  if (data.poly1 && data.poly2 && j1.rows() == j1.cols() && j2.rows() == j2.cols()) {
    try {
      data.j1_inv_t = rational_inverse(j1).transpose();
      data.j2_inv = rational_inverse(j2);
      data.invertible = true;
    } catch (const DegenerateInputError&) {
      data.invertible = false;
    }
  }
  return data;
}

}  // namespace

Body pi_product(const std::vector<Body>& factors, Provenance* prov) {
  require_factors(factors, 2, "pi product");
  std::vector<std::vector<VectorXq>> classes;
  classes.reserve(factors.size());
  for (const auto& f : factors) {
    if (!f.is_polytope())
      throw RepresentationError("pi product: factors must have V-representations");
    classes.push_back(vertex_classes(f));
  }
  TensorShape shape;
  for (const auto& f : factors) shape.dims.push_back(f.dim());
  auto raw = kron_classes(classes, "pi product");
  auto reduced = reduce_generators(raw, shape.total());
  record_product(prov, "pi", factors);
  if (prov) {
    prov->set("raw_classes", std::to_string(raw.size()));
    prov->set("classes", std::to_string(reduced.size()));
  }
  return Body(VPolytope(shape.total(), std::move(reduced)));
}

Body eps_product(const std::vector<Body>& factors, Provenance* prov) {
  require_factors(factors, 2, "eps product");
  std::vector<std::vector<VectorXq>> classes;
  classes.reserve(factors.size());
  for (const auto& f : factors) {
    if (!f.is_polytope())
      throw RepresentationError("eps product: factor polars must have V-representations");
    classes.push_back(normal_classes(f));
  }
  TensorShape shape;
  for (const auto& f : factors) shape.dims.push_back(f.dim());
  auto raw = kron_classes(classes, "eps product");
  auto reduced = reduce_generators(raw, shape.total());
  record_product(prov, "eps", factors);
  if (prov) {
    prov->set("raw_classes", std::to_string(raw.size()));
    prov->set("classes", std::to_string(reduced.size()));
  }
  return Body(HPolytope(shape.total(), std::move(reduced)));
}

Body hilbert2_product(const std::vector<Body>& factors, Provenance* prov) {
  require_factors(factors, 2, "hilbert2 product");
  bool exact = true;
  for (const auto& f : factors) {
    if (f.kind() != BodyKind::Ellipsoid)
      throw RepresentationError("hilbert2 product: factors must be ellipsoids");
    exact = exact && f.as_e().exact();
  }
  TensorShape shape;
  for (const auto& f : factors) shape.dims.push_back(f.dim());
  record_product(prov, "2", factors);
  if (prov) prov->set("exact", exact ? "true" : "false");
  if (exact) {
    std::vector<MatrixXq> qs;
    for (const auto& f : factors) qs.push_back(f.as_e().q_exact());
    return Body(Ellipsoid(shape.total(), kron(qs)));
  }
  MatrixXd q = factors[0].as_e().q();
  for (size_t k = 1; k < factors.size(); ++k) q = kron(q, factors[k].as_e().q());
  return Body(Ellipsoid(shape.total(), q));
}

Body omega2_product(const std::vector<Body>& factors, Provenance* prov) {
  require_two(factors, "omega2 product");
  auto data = std::make_shared<Omega2Data>(build_omega2(factors));
  const Index d1 = data->d1;
  const Index d2 = data->d2;

  OracleBody oracle;
  oracle.dim = d1 * d2;
  oracle.exact = false;
  oracle.gauge_fn = [data, d1, d2](const VectorXq& u) {
    MatrixXd ud = to_double_matrix(unvec_row(u, d1, d2));
    MatrixXd gram = data->row_map * ud * data->col_map;
    if (gram.cwiseAbs().maxCoeff() == 0.0) return GaugeValue::exact(Rational(0));
    auto res = gamma2_bounds_sided(gram, data->row_side, data->col_side, data->opts);
    return gamma2_interval(res);
  };
  oracle.support_fn = [data, d1, d2](const VectorXq& y) {
    if (!data->invertible)
      throw RepresentationError(
          "omega2 support: needs square invertible facet-normal matrices on both factors");
    MatrixXq n = data->j1_inv_t * unvec_row(y, d1, d2) * data->j2_inv;
    MatrixXd nd = to_double_matrix(n);
    if (nd.cwiseAbs().maxCoeff() == 0.0) return GaugeValue::exact(Rational(0));
    auto res = gamma2_star_bounds(nd, data->opts);
    return gamma2_interval(res);
  };
  oracle.prov.kind = "omega2";
  oracle.prov.set("order", "2");
  oracle.prov.set("dims", dims_string(factors));
  oracle.prov.set("gram", std::to_string(data->row_map.rows()) + "x" +
                              std::to_string(data->col_map.cols()));
  oracle.recipe = make_recipe("omega2", factors);
  if (prov) *prov = oracle.prov;
  return Body(std::move(oracle));
}

Body pi_inj_product(const std::vector<Body>& factors, Provenance* prov) {
  require_two(factors, "pi_inj product");
  for (const auto& f : factors)
    if (!f.is_polytope())
      throw RepresentationError("pi_inj product: factors must be polytopes");
  const Index d1 = factors[0].dim();
  const Index d2 = factors[1].dim();
  auto j1 = std::make_shared<MatrixXq>(rows_matrix(normal_classes(factors[0]), d1));
  auto j2 = std::make_shared<MatrixXq>(rows_matrix(normal_classes(factors[1]), d2));
  const Index m1 = j1->rows();
  const Index m2 = j2->rows();
  if (m1 + m2 - 2 > 12)
    throw BudgetError("pi_inj product: 2^" + std::to_string(m1 + m2 - 2) + " sign classes");
  auto w = std::make_shared<MatrixXq>(sign_class_columns(m1, m2));

  OracleBody oracle;
  oracle.dim = d1 * d2;
  oracle.exact = true;
  // gauge = l1 decomposition of the facet-embedded tensor over rank-one sign
  // matrices (the vertex classes of the cube pi product)
  oracle.gauge_fn = [j1, j2, w, d1, d2](const VectorXq& u) {
    VectorXq target = vec_row((*j1) * unvec_row(u, d1, d2) * j2->transpose());
    auto sol = lp_min_l1(*w, target);
    if (sol.status != LpStatus::Optimal)
      throw SolverError("pi_inj gauge LP failed (embedding not spanning?)");
    return GaugeValue::exact(sol.objective);
  };
  // support = max <y, x> over embedded tensors that decompose with l1 mass 1
  oracle.support_fn = [j1, j2, w, d1, d2](const VectorXq& y) {
    const Index n = d1 * d2;
    const Index kc = w->cols();
    const Index rows = w->rows();
    MatrixXq e = kron(*j1, *j2);
    LinProgram prog;
    prog.a = MatrixXq::Zero(rows + 1, n + 2 * kc);
    prog.a.block(0, 0, rows, n) = e;
    prog.a.block(0, n, rows, kc) = -(*w);
    prog.a.block(0, n + kc, rows, kc) = *w;
    prog.a.block(rows, n, 1, 2 * kc) = MatrixXq::Constant(1, 2 * kc, Rational(1));
    prog.b = VectorXq::Zero(rows + 1);
    prog.b[rows] = 1;
    prog.c = VectorXq::Zero(n + 2 * kc);
    prog.c.head(n) = -y;
    prog.senses.assign(static_cast<size_t>(rows), Sense::Eq);
    prog.senses.push_back(Sense::Le);
    prog.vars.assign(static_cast<size_t>(n), VarKind::Free);
    prog.vars.insert(prog.vars.end(), static_cast<size_t>(2 * kc), VarKind::NonNeg);
    auto sol = lp_solve(prog);
    if (sol.status != LpStatus::Optimal) throw SolverError("pi_inj support LP failed");
    return GaugeValue::exact(-sol.objective);
  };
  oracle.prov.kind = "pi_inj";
  oracle.prov.set("order", "2");
  oracle.prov.set("dims", dims_string(factors));
  oracle.prov.set("embed_facets", std::to_string(m1) + "x" + std::to_string(m2));
  oracle.prov.set("sign_classes", std::to_string(w->cols()));
  oracle.recipe = make_recipe("pi_inj", factors);
  if (prov) *prov = oracle.prov;
  return Body(std::move(oracle));
}

Body eps_proj_product(const std::vector<Body>& factors, Provenance* prov) {
  require_two(factors, "eps_proj product");
  for (const auto& f : factors)
    if (!f.is_polytope())
      throw RepresentationError("eps_proj product: factors must be polytopes");
  const Index d1 = factors[0].dim();
  const Index d2 = factors[1].dim();
  auto g1 = std::make_shared<MatrixXq>(cols_matrix(vertex_classes(factors[0]), d1));
  auto g2 = std::make_shared<MatrixXq>(cols_matrix(vertex_classes(factors[1]), d2));
  const Index k1 = g1->cols();
  const Index k2 = g2->cols();
  if (k1 + k2 - 2 > 12)
    throw BudgetError("eps_proj product: 2^" + std::to_string(k1 + k2 - 2) + " sign classes");
  auto w = std::make_shared<MatrixXq>(sign_class_columns(k1, k2));

  OracleBody oracle;
  oracle.dim = d1 * d2;
  oracle.exact = true;
  // gauge: min lambda s.t. u = (q1 (x) q2) z with z in lambda * (eps product
  // of cross-polytopes); the eps product's slabs are |<s (x) t, z>| <= 1
  oracle.gauge_fn = [g1, g2, w, d1, d2](const VectorXq& u) {
    const Index nz = g1->cols() * g2->cols();
    const Index kc = w->cols();
    MatrixXq m = kron(*g1, *g2);  // (d1 d2) x nz
    const Index erows = d1 * d2;
    LinProgram prog;
    prog.a = MatrixXq::Zero(erows + 2 * kc, nz + 1);
    prog.a.block(0, 0, erows, nz) = m;
    for (Index c = 0; c < kc; ++c) {
      prog.a.block(erows + 2 * c, 0, 1, nz) = w->col(c).transpose();
      prog.a(erows + 2 * c, nz) = -1;
      prog.a.block(erows + 2 * c + 1, 0, 1, nz) = -w->col(c).transpose();
      prog.a(erows + 2 * c + 1, nz) = -1;
    }
    prog.b = VectorXq::Zero(erows + 2 * kc);
    prog.b.head(erows) = u;
    prog.c = VectorXq::Zero(nz + 1);
    prog.c[nz] = 1;
    prog.senses.assign(static_cast<size_t>(erows), Sense::Eq);
    prog.senses.insert(prog.senses.end(), static_cast<size_t>(2 * kc), Sense::Le);
    prog.vars.assign(static_cast<size_t>(nz), VarKind::Free);
    prog.vars.push_back(VarKind::NonNeg);
    auto sol = lp_solve(prog);
    if (sol.status != LpStatus::Optimal)
      throw SolverError("eps_proj gauge LP failed (quotient not surjective?)");
    return GaugeValue::exact(sol.objective);
  };
  // support = gauge of the pulled-back functional in the polar of the eps
  // product, i.e. an l1 decomposition over the sign classes
  oracle.support_fn = [g1, g2, w, d1, d2](const VectorXq& y) {
    VectorXq target = vec_row(g1->transpose() * unvec_row(y, d1, d2) * (*g2));
    auto sol = lp_min_l1(*w, target);
    if (sol.status != LpStatus::Optimal) throw SolverError("eps_proj support LP failed");
    return GaugeValue::exact(sol.objective);
  };
  oracle.prov.kind = "eps_proj";
  oracle.prov.set("order", "2");
  oracle.prov.set("dims", dims_string(factors));
  oracle.prov.set("quotient_gens", std::to_string(k1) + "x" + std::to_string(k2));
  oracle.prov.set("sign_classes", std::to_string(w->cols()));
  oracle.recipe = make_recipe("eps_proj", factors);
  if (prov) *prov = oracle.prov;
  return Body(std::move(oracle));
}

Body dual_product(ProductKind kind, const std::vector<Body>& factors, Provenance* prov) {
  std::vector<Body> polars;
  polars.reserve(factors.size());
  for (const auto& f : factors) polars.push_back(polar(f));
  Body inner = make_product(kind, false, polars, prov);
  Body out = polar(inner);
  if (prov) {
    prov->kind = "dual(" + product_kind_name(kind) + ")";
    prov->set("dims", dims_string(factors));
  }
  return out;
}

Body make_product(ProductKind kind, bool dual, const std::vector<Body>& factors,
                  Provenance* prov) {
  if (dual) return dual_product(kind, factors, prov);
  switch (kind) {
    case ProductKind::Pi: return pi_product(factors, prov);
    case ProductKind::Eps: return eps_product(factors, prov);
    case ProductKind::Hilbert2: return hilbert2_product(factors, prov);
    case ProductKind::Omega2: return omega2_product(factors, prov);
    case ProductKind::PiInj: return pi_inj_product(factors, prov);
    case ProductKind::EpsProj: return eps_proj_product(factors, prov);
  }
  throw Error("unknown product kind");
}

Body section_body(const Body& body, const MatrixXq& basis, Provenance* prov) {
  const Index d = body.dim();
  const Index k = basis.cols();
  if (basis.rows() != d) throw DimensionError("section: basis rows must match body dim");
  if (k < 1 || k > d) throw DimensionError("section: need 1 <= k <= dim columns");
  if (rational_rank(basis) != k)
    throw DegenerateInputError("section: basis columns not independent");
  if (prov) {
    prov->kind = "section";
    prov->set("ambient", std::to_string(d));
    prov->set("dim", std::to_string(k));
  }
  switch (body.kind()) {
    case BodyKind::HPolytope: {
      std::vector<VectorXq> normals;
      for (const auto& a : body.as_h().normals()) normals.push_back(basis.transpose() * a);
      return Body(HPolytope(k, std::move(normals)));
    }
    case BodyKind::Ellipsoid: {
      const auto& e = body.as_e();
      if (e.exact()) return Body(Ellipsoid(k, MatrixXq(basis.transpose() * e.q_exact() * basis)));
      MatrixXd bd = to_double_matrix(basis);
      return Body(Ellipsoid(k, MatrixXd(bd.transpose() * e.q() * bd)));
    }
    case BodyKind::VPolytope: {
      auto gens = std::make_shared<MatrixXq>(cols_matrix(body.as_v().generators(), d));
      auto bsh = std::make_shared<MatrixXq>(basis);
      OracleBody oracle;
      oracle.dim = k;
      oracle.exact = true;
      oracle.gauge_fn = [bsh, body](const VectorXq& t) { return gauge(body, (*bsh) * t); };
      // support: max <y, t> with basis * t still inside conv(+-gens)
      oracle.support_fn = [gens, bsh, d, k](const VectorXq& y) {
        const Index kg = gens->cols();
        LinProgram prog;
        prog.a = MatrixXq::Zero(d + 1, k + 2 * kg);
        prog.a.block(0, 0, d, k) = *bsh;
        prog.a.block(0, k, d, kg) = -(*gens);
        prog.a.block(0, k + kg, d, kg) = *gens;
        prog.a.block(d, k, 1, 2 * kg) = MatrixXq::Constant(1, 2 * kg, Rational(1));
        prog.b = VectorXq::Zero(d + 1);
        prog.b[d] = 1;
        prog.c = VectorXq::Zero(k + 2 * kg);
        prog.c.head(k) = -y;
        prog.senses.assign(static_cast<size_t>(d), Sense::Eq);
        prog.senses.push_back(Sense::Le);
        prog.vars.assign(static_cast<size_t>(k), VarKind::Free);
        prog.vars.insert(prog.vars.end(), static_cast<size_t>(2 * kg), VarKind::NonNeg);
        auto sol = lp_solve(prog);
        if (sol.status != LpStatus::Optimal) throw SolverError("section support LP failed");
        return GaugeValue::exact(-sol.objective);
      };
      oracle.prov.kind = "section";
      oracle.prov.set("ambient", std::to_string(d));
      oracle.prov.set("dim", std::to_string(k));
      auto recipe = make_recipe("section", {body});
      for (Index j = 0; j < basis.cols(); ++j) {
        std::ostringstream col;
        for (Index i = 0; i < basis.rows(); ++i) {
          if (i) col << ",";
          col << format_rational(basis(i, j));
        }
        recipe->params.emplace_back("basis_col" + std::to_string(j), col.str());
      }
      oracle.recipe = std::move(recipe);
      return Body(std::move(oracle));
    }
    case BodyKind::Oracle: {
      const auto& o = body.as_oracle();
      auto bsh = std::make_shared<MatrixXq>(basis);
      OracleBody oracle;
      oracle.dim = k;
      oracle.exact = o.exact;
      oracle.gauge_fn = [bsh, body](const VectorXq& t) { return gauge(body, (*bsh) * t); };
      oracle.support_fn = [](const VectorXq&) -> GaugeValue {
        throw RepresentationError("section of an oracle body has no support evaluator");
      };
      oracle.prov.kind = "section";
      oracle.prov.set("ambient", std::to_string(d));
      oracle.prov.set("dim", std::to_string(k));
      return Body(std::move(oracle));
    }
  }
  throw Error("unknown body kind");
}

Body image_body(const Body& body, const MatrixXq& map, Provenance* prov) {
  const Index d = body.dim();
  const Index k = map.rows();
  if (map.cols() != d) throw DimensionError("image: map columns must match body dim");
  if (k < 1 || k > d) throw DimensionError("image: need 1 <= k <= dim rows");
  if (rational_rank(map) != k) throw DegenerateInputError("image: map not surjective");
  if (prov) {
    prov->kind = "image";
    prov->set("ambient", std::to_string(d));
    prov->set("dim", std::to_string(k));
  }
  switch (body.kind()) {
    case BodyKind::VPolytope:
    case BodyKind::HPolytope: {
      auto verts = vertex_classes(body);
      std::vector<VectorXq> mapped;
      mapped.reserve(verts.size());
      for (const auto& g : verts) mapped.push_back(map * g);
      auto reduced = reduce_generators(std::move(mapped), k);
      if (prov) prov->set("classes", std::to_string(reduced.size()));
      return Body(VPolytope(k, std::move(reduced)));
    }
    case BodyKind::Ellipsoid: {
      const auto& e = body.as_e();
      if (e.exact()) {
        MatrixXq qi = rational_inverse(e.q_exact());
        return Body(Ellipsoid(k, rational_inverse(MatrixXq(map * qi * map.transpose()))));
      }
      MatrixXd md = to_double_matrix(map);
      MatrixXd qi = e.q().inverse();
      return Body(Ellipsoid(k, MatrixXd((md * qi * md.transpose()).inverse())));
    }
    case BodyKind::Oracle:
      throw RepresentationError("image of an oracle body is not supported");
  }
  throw Error("unknown body kind");
}

}  // namespace symtensor
