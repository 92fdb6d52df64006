#include "symtensor/body.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>
#include <sstream>

namespace symtensor {

void Provenance::set(const std::string& key, const std::string& value) {
  for (auto& kv : attrs) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  attrs.emplace_back(key, value);
}

const std::string* Provenance::find(const std::string& key) const {
  for (const auto& kv : attrs)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

VectorXq antipodal_rep(const VectorXq& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] > 0) return v;
    if (v[i] < 0) return -v;
  }
  return v;  // zero vector
}

namespace {

bool lex_less(const VectorXq& a, const VectorXq& b) {
  for (Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

void check_spanning(const std::vector<VectorXq>& vecs, Index dim, const char* what) {
  MatrixXq m(static_cast<Index>(vecs.size()), dim);
  for (Index i = 0; i < m.rows(); ++i) m.row(i) = vecs[i].transpose();
  if (rational_rank(m) != dim) {
    std::ostringstream os;
    os << what << " do not span R^" << dim << " (0 not interior)";
    throw DegenerateInputError(os.str());
  }
}

// gauge LP over conv(+-gens): min sum(p+q) s.t. G'(p-q) = x
LpSolution gauge_lp(const std::vector<VectorXq>& gens, const VectorXq& x) {
  const Index d = x.size();
  const Index k = static_cast<Index>(gens.size());
  LinProgram prog;
  prog.a.resize(d, 2 * k);
  for (Index j = 0; j < k; ++j) {
    prog.a.col(j) = gens[j];
    prog.a.col(k + j) = -gens[j];
  }
  prog.b = x;
  prog.c = VectorXq::Constant(2 * k, Rational(1));
  return lp_solve(prog);
}

}  // namespace

std::vector<VectorXq> canonicalize_pointset(std::vector<VectorXq> points, bool drop_zero) {
  for (auto& p : points) p = antipodal_rep(p);
  if (drop_zero) {
    points.erase(std::remove_if(points.begin(), points.end(),
                                [](const VectorXq& p) { return p.isZero(0); }),
                 points.end());
  }
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end(),
                           [](const VectorXq& a, const VectorXq& b) { return a == b; }),
               points.end());
  return points;
}

VPolytope::VPolytope(Index dim, std::vector<VectorXq> generators) : dim_(dim) {
  if (dim < 1) throw DimensionError("VPolytope: dim must be >= 1");
  for (const auto& g : generators)
    if (g.size() != dim) throw DimensionError("VPolytope: generator size vs dim");
  gens_ = canonicalize_pointset(std::move(generators));
  if (gens_.empty()) throw DegenerateInputError("VPolytope: no nonzero generators");
  check_spanning(gens_, dim, "generators");
}

HPolytope::HPolytope(Index dim, std::vector<VectorXq> normals) : dim_(dim) {
  if (dim < 1) throw DimensionError("HPolytope: dim must be >= 1");
  for (const auto& a : normals)
    if (a.size() != dim) throw DimensionError("HPolytope: normal size vs dim");
  normals_ = canonicalize_pointset(std::move(normals));
  if (normals_.empty()) throw DegenerateInputError("HPolytope: no nonzero normals");
  check_spanning(normals_, dim, "facet normals");  // unbounded otherwise
}

Ellipsoid::Ellipsoid(Index dim, MatrixXq q_exact) : dim_(dim), exact_(true) {
  if (dim < 1) throw DimensionError("Ellipsoid: dim must be >= 1");
  if (q_exact.rows() != dim || q_exact.cols() != dim)
    throw DimensionError("Ellipsoid: shape matrix size vs dim");
  if (q_exact != q_exact.transpose())
    throw DegenerateInputError("Ellipsoid: shape matrix not symmetric");
  if (rational_definiteness(q_exact) != Definiteness::PositiveDefinite)
    throw DegenerateInputError("Ellipsoid: shape matrix not positive definite");
  q_exact_ = std::move(q_exact);
  q_ = to_double_matrix(q_exact_);
}

Ellipsoid::Ellipsoid(Index dim, MatrixXd q, double symmetry_tol) : dim_(dim), exact_(false) {
  if (dim < 1) throw DimensionError("Ellipsoid: dim must be >= 1");
  if (q.rows() != dim || q.cols() != dim)
    throw DimensionError("Ellipsoid: shape matrix size vs dim");
  double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * scale)
    throw DegenerateInputError("Ellipsoid: shape matrix not symmetric within 1e-12");
  q_ = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(q_);
  if (es.eigenvalues().minCoeff() <= 0)
    throw DegenerateInputError("Ellipsoid: shape matrix not positive definite");
}

Index Body::dim() const {
  return visit([](const auto& b) -> Index {
    if constexpr (std::is_same_v<std::decay_t<decltype(b)>, OracleBody>)
      return b.dim;
    else
      return b.dim();
  });
}

const VPolytope& Body::as_v() const {
  if (kind() != BodyKind::VPolytope) throw RepresentationError("not a V-polytope");
  return std::get<VPolytope>(rep_);
}
const HPolytope& Body::as_h() const {
  if (kind() != BodyKind::HPolytope) throw RepresentationError("not an H-polytope");
  return std::get<HPolytope>(rep_);
}
const Ellipsoid& Body::as_e() const {
  if (kind() != BodyKind::Ellipsoid) throw RepresentationError("not an ellipsoid");
  return std::get<Ellipsoid>(rep_);
}
const OracleBody& Body::as_oracle() const {
  if (kind() != BodyKind::Oracle) throw RepresentationError("not an oracle body");
  return std::get<OracleBody>(rep_);
}

GaugeValue gauge(const Body& body, const VectorXq& x) {
  if (x.size() != body.dim()) throw DimensionError("gauge: point size vs body dim");
  switch (body.kind()) {
    case BodyKind::VPolytope: {
      if (x.isZero(0)) return GaugeValue::exact(Rational(0));
      auto sol = gauge_lp(body.as_v().generators(), x);
      if (sol.status != LpStatus::Optimal)
        throw SolverError("gauge LP not optimal on a spanning generator set");
      return GaugeValue::exact(sol.objective);
    }
    case BodyKind::HPolytope: {
      Rational best(0);
      for (const auto& a : body.as_h().normals()) {
        Rational v = a.dot(x);
        if (v < 0) v = -v;
        if (v > best) best = v;
      }
      return GaugeValue::exact(best);
    }
    case BodyKind::Ellipsoid: {
      const auto& e = body.as_e();
      if (e.exact()) {
        Rational quad = x.dot(e.q_exact() * x);
        auto iv = sqrt_interval(quad);
        return GaugeValue::interval(iv.lo, iv.hi);
      }
      VectorXd xd = to_double_vector(x);
      double quad = xd.dot(e.q() * xd);
      auto iv = sqrt_interval(quad);
      double slop = 1e-12 * iv.hi + 1e-300;
      return GaugeValue::interval(std::max(0.0, iv.lo - slop), iv.hi + slop);
    }
    case BodyKind::Oracle:
      return body.as_oracle().gauge_fn(x);
  }
  throw Error("unreachable");
}

GaugeValue support(const Body& body, const VectorXq& y) {
  if (y.size() != body.dim()) throw DimensionError("support: point size vs body dim");
  switch (body.kind()) {
    case BodyKind::VPolytope: {
      Rational best(0);
      for (const auto& g : body.as_v().generators()) {
        Rational v = g.dot(y);
        if (v < 0) v = -v;
        if (v > best) best = v;
      }
      return GaugeValue::exact(best);
    }
    case BodyKind::HPolytope: {
      if (y.isZero(0)) return GaugeValue::exact(Rational(0));
      auto sol = gauge_lp(body.as_h().normals(), y);
      if (sol.status != LpStatus::Optimal)
        throw SolverError("support LP not optimal on a bounded H-polytope");
      return GaugeValue::exact(sol.objective);
    }
    case BodyKind::Ellipsoid: {
      const auto& e = body.as_e();
      if (e.exact()) {
        VectorXq z = rational_solve(e.q_exact(), y);
        Rational quad = y.dot(z);
        auto iv = sqrt_interval(quad);
        return GaugeValue::interval(iv.lo, iv.hi);
      }
      VectorXd yd = to_double_vector(y);
      VectorXd z = e.q().llt().solve(yd);
      auto iv = sqrt_interval(yd.dot(z));
      double slop = 1e-10 * iv.hi + 1e-300;
      return GaugeValue::interval(std::max(0.0, iv.lo - slop), iv.hi + slop);
    }
    case BodyKind::Oracle:
      return body.as_oracle().support_fn(y);
  }
  throw Error("unreachable");
}

Body polar(const Body& body) {
  switch (body.kind()) {
    case BodyKind::VPolytope:
      return Body(HPolytope(body.dim(), body.as_v().generators()));
    case BodyKind::HPolytope:
      return Body(VPolytope(body.dim(), body.as_h().normals()));
    case BodyKind::Ellipsoid: {
      const auto& e = body.as_e();
      if (e.exact()) return Body(Ellipsoid(e.dim(), rational_inverse(e.q_exact())));
      Eigen::LLT<MatrixXd> llt(e.q());
      MatrixXd inv = llt.solve(MatrixXd::Identity(e.dim(), e.dim()));
      return Body(Ellipsoid(e.dim(), MatrixXd(0.5 * (inv + inv.transpose()))));
    }
    case BodyKind::Oracle: {
      const auto& o = body.as_oracle();
      OracleBody p;
      p.dim = o.dim;
      p.exact = o.exact;
      p.gauge_fn = o.support_fn;
      p.support_fn = o.gauge_fn;
      p.prov.kind = "polar";
      p.prov.set("of", o.prov.kind);
      for (const auto& kv : o.prov.attrs) p.prov.set(kv.first, kv.second);
      if (o.recipe) {
        // polarity toggles a marker so polar(polar(x)) reloads as x
        auto r = std::make_shared<OracleRecipe>(*o.recipe);
        auto it = std::find_if(r->params.begin(), r->params.end(),
                               [](const auto& kv) { return kv.first == "polar"; });
        if (it != r->params.end())
          r->params.erase(it);
        else
          r->params.emplace_back("polar", "1");
        p.recipe = r;
      }
      return Body(std::move(p));
    }
  }
  throw Error("unreachable");
}

std::vector<VectorXq> reduce_generators(std::vector<VectorXq> gens, Index dim) {
  auto pts = canonicalize_pointset(std::move(gens));
  for (const auto& p : pts)
    if (p.size() != dim) throw DimensionError("reduce_generators: point size vs dim");
  // peel redundant points one at a time; surviving set keeps the same hull
  for (std::size_t i = 0; i < pts.size();) {
    if (pts.size() == 1) break;
    std::vector<VectorXq> others;
    others.reserve(pts.size() - 1);
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    auto sol = gauge_lp(others, pts[i]);
    if (sol.status == LpStatus::Optimal && sol.objective <= 1) {
      pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return pts;
}

std::vector<VectorXq> vertex_classes(const Body& body) {
  switch (body.kind()) {
    case BodyKind::VPolytope:
      return body.as_v().generators();
    case BodyKind::HPolytope:
      return facet_enumeration(body.as_h().normals(), body.dim());
    default:
      throw RepresentationError("vertex classes need a polytope body");
  }
}

std::vector<VectorXq> normal_classes(const Body& body) {
  switch (body.kind()) {
    case BodyKind::VPolytope:
      return facet_enumeration(body.as_v().generators(), body.dim());
    case BodyKind::HPolytope:
      return body.as_h().normals();
    default:
      throw RepresentationError("normal classes need a polytope body");
  }
}

namespace {

ContainsResult check_points_in(const Body& outer, const std::vector<VectorXq>& pts,
                               bool sampled) {
  ContainsResult res;
  res.contained = true;
  res.certified = true;
  res.sampled = sampled;
  for (const auto& p : pts) {
    GaugeValue g = gauge(outer, p);
    if (g.is_exact()) {
      if (g.rational() > 1) {
        res.contained = false;
        res.witness = p;
        res.witness_gauge = g;
        return res;
      }
    } else {
      if (g.lo() > 1.0) {
        res.contained = false;
        res.witness = p;
        res.witness_gauge = g;
        return res;
      }
      if (g.hi() > 1.0) {
        // interval straddles 1: cannot certify either way
        res.contained = false;
        res.certified = false;
        res.witness = p;
        res.witness_gauge = g;
        return res;
      }
    }
  }
  return res;
}

}  // namespace

ContainsResult contains(const Body& outer, const Body& inner, const ContainsOptions& opts) {
  if (outer.dim() != inner.dim()) throw DimensionError("contains: body dims differ");
  const Index d = inner.dim();

  switch (inner.kind()) {
    case BodyKind::VPolytope:
      return check_points_in(outer, inner.as_v().generators(), false);
    case BodyKind::HPolytope:
      return check_points_in(outer, vertex_classes(inner), false);
    case BodyKind::Ellipsoid: {
      const auto& e = inner.as_e();
      if (outer.kind() == BodyKind::Ellipsoid) {
        const auto& eo = outer.as_e();
        if (e.exact() && eo.exact()) {
          // inner ⊆ outer  <=>  Q_outer ⪯ Q_inner
          auto def = rational_definiteness(MatrixXq(e.q_exact() - eo.q_exact()));
          ContainsResult res;
          res.contained = def != Definiteness::Indefinite;
          res.certified = true;
          if (!res.contained) {
            // witness: rationalized eigen-direction, verified exactly
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(e.q() - eo.q());
            Index which;
            es.eigenvalues().minCoeff(&which);
            VectorXd v = es.eigenvectors().col(which);
            for (long den : {1000L, 1000000L, 1000000000L}) {
              VectorXq w(d);
              for (Index i = 0; i < d; ++i)
                w[i] = Rational(Integer(static_cast<long long>(std::llround(v[i] * den))),
                                Integer(den));
              Rational in_q = w.dot(e.q_exact() * w);
              Rational out_q = w.dot(eo.q_exact() * w);
              if (in_q == 0 || out_q <= in_q) continue;
              // scale so w'Q_in w <= 1 < w'Q_out w: t^2 in (1/out, 1/in]
              Rational t2 = 2 / (in_q + out_q);
              if (t2 * in_q > 1 || t2 * out_q <= 1) continue;
              // apply a rational near-sqrt of t2 and recheck exactly
              double td = std::sqrt(to_double(t2));
              Rational t(Integer(static_cast<long long>(std::llround(td * 1e12))),
                         Integer(1000000000000LL));
              VectorXq cand = w * t;
              if (cand.dot(e.q_exact() * cand) <= 1 && cand.dot(eo.q_exact() * cand) > 1) {
                res.witness = cand;
                res.witness_gauge = gauge(outer, cand);
                break;
              }
            }
          }
          return res;
        }
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(e.q() - eo.q());
        ContainsResult res;
        double lmin = es.eigenvalues().minCoeff();
        double scale = std::max(1.0, e.q().cwiseAbs().maxCoeff());
        res.contained = lmin >= -1e-10 * scale;
        res.certified = std::abs(lmin) > 1e-10 * scale;
        return res;
      }
      if (outer.kind() == BodyKind::HPolytope) {
        // every facet slab must contain the ellipsoid: support(a_i) <= 1
        ContainsResult res;
        res.contained = true;
        for (const auto& a : outer.as_h().normals()) {
          if (e.exact()) {
            VectorXq z = rational_solve(e.q_exact(), a);
            Rational quad = a.dot(z);  // squared support of the slab normal
            if (quad > 1) {
              // w = 2/(quad+1) * z lies strictly inside the ellipsoid
              // (w'Qw = 4 quad/(quad+1)^2 < 1) yet <a, w> = 2 quad/(quad+1) > 1
              VectorXq w = z * Rational(Integer(2), Integer(1)) / (quad + 1);
              res.contained = false;
              res.witness = w;
              res.witness_gauge = gauge(outer, w);
              return res;
            }
          } else {
            GaugeValue s = support(inner, a);
            if (s.lo() > 1.0) {
              res.contained = false;
              res.witness_gauge = s;
              return res;
            }
            if (s.hi() > 1.0) {
              res.contained = false;
              res.certified = false;
              res.witness_gauge = s;
              return res;
            }
          }
        }
        return res;
      }
      break;  // fall through to sampled path
    }
    case BodyKind::Oracle:
      break;  // sampled only
  }

  if (!opts.allow_sampled)
    throw RepresentationError(
        "contains: inner body admits no finite certificate; pass allow_sampled");

  // sampled sub-certificate: boundary points of `inner` in random directions
  std::mt19937_64 eng(opts.seed);
  std::vector<VectorXq> pts;
  pts.reserve(opts.samples);
  for (int s = 0; s < opts.samples; ++s) {
    VectorXq dir(d);
    for (Index i = 0; i < d; ++i)
      dir[i] = Rational(static_cast<long>(eng() % 2001) - 1000, 1000);
    if (dir.isZero(0)) dir[0] = 1;
    GaugeValue g = gauge(inner, dir);
    if (g.is_exact()) {
      if (g.rational() == 0) continue;
      pts.push_back(VectorXq(dir / g.rational()));
    } else {
      if (g.hi() <= 0 || g.hi() > 1e12) continue;
      // divide by an upper bound of the gauge so the point stays inside
      Rational scale(Integer(static_cast<long long>(std::ceil(g.hi() * 1e6)) + 1),
                     Integer(1000000));
      pts.push_back(VectorXq(dir / scale));
    }
  }
  auto res = check_points_in(outer, pts, true);
  res.certified = false;
  return res;
}

VPolytope cross_polytope(Index dim) {
  std::vector<VectorXq> gens;
  for (Index i = 0; i < dim; ++i) {
    VectorXq e = VectorXq::Zero(dim);
    e[i] = 1;
    gens.push_back(e);
  }
  return VPolytope(dim, gens);
}

HPolytope cube(Index dim) {
  std::vector<VectorXq> normals;
  for (Index i = 0; i < dim; ++i) {
    VectorXq e = VectorXq::Zero(dim);
    e[i] = 1;
    normals.push_back(e);
  }
  return HPolytope(dim, normals);
}

Ellipsoid euclidean_ball(Index dim) { return Ellipsoid(dim, MatrixXq(MatrixXq::Identity(dim, dim))); }

Body unit_ball(const std::string& p, Index dim) {
  if (p == "1") return Body(cross_polytope(dim));
  if (p == "2") return Body(euclidean_ball(dim));
  if (p == "inf") return Body(cube(dim));
  throw ParseError("unit_ball: p must be one of 1, 2, inf");
}

}  // namespace symtensor
