#include "symtensor/checks.hpp"

#include "symtensor/bm.hpp"
#include "symtensor/mvee.hpp"
#include "symtensor/norms.hpp"
#include "symtensor/rng.hpp"
#include "symtensor/symmetry.hpp"
#include "symtensor/tensor.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>

namespace symtensor {

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string pad2(int k) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d", k);
  return buf;
}

// Outcome of one property body: pass flag plus a certificate-style summary.
using Property = std::function<std::pair<bool, std::string>()>;

class Recorder {
 public:
  Recorder(std::string suite, const CheckOptions& opts, std::vector<CheckResult>& out)
      : suite_(std::move(suite)), opts_(opts), out_(out) {}

  void run(const std::string& name, const Property& body) {
    CheckResult r;
    r.suite = suite_;
    r.name = suite_ + "/" + name;
    r.repro = "symtensor check " + suite_ + " --seed " + std::to_string(opts_.seed) +
              " --samples " + std::to_string(opts_.samples) + " --tol " + fmt(opts_.tol);
    auto start = std::chrono::steady_clock::now();
    try {
      auto [pass, detail] = body();
      r.pass = pass;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out_.push_back(std::move(r));
  }

 private:
  std::string suite_;
  const CheckOptions& opts_;
  std::vector<CheckResult>& out_;
};

bool gauges_equal(const Body& a, const Body& b, const VectorXq& u) {
  return gauge(a, u).rational() == gauge(b, u).rational();
}

// polar of the pi product vs the eps product of the polars, and the eps-side
// mirror, exact on random rational points
void suite_duality(const CheckOptions& opts, std::vector<CheckResult>& out) {
  Recorder rec("duality", opts, out);
  SeededRng rng(opts.seed);
  const int pairs = std::max(2, opts.samples / 5);
  const int points = std::max(8, opts.samples);
  for (int k = 0; k < pairs; ++k) {
    Body p(rng.vpolytope(2, 4));
    Body q(rng.vpolytope(3, 4));
    rec.run("pair" + pad2(k) + "/pi-polar", [&] {
      Body lhs = polar(pi_product({p, q}));
      Body rhs = eps_product({polar(p), polar(q)});
      for (int i = 0; i < points; ++i) {
        VectorXq u = rng.vector(6);
        if (!gauges_equal(lhs, rhs, u))
          return std::make_pair(false, "gauge mismatch at sample " + std::to_string(i));
      }
      return std::make_pair(true, std::to_string(points) + " points, exact equality");
    });
    rec.run("pair" + pad2(k) + "/eps-polar", [&] {
      Body lhs = polar(eps_product({p, q}));
      Body rhs = pi_product({polar(p), polar(q)});
      for (int i = 0; i < points; ++i) {
        VectorXq u = rng.vector(6);
        if (!gauges_equal(lhs, rhs, u))
          return std::make_pair(false, "gauge mismatch at sample " + std::to_string(i));
      }
      return std::make_pair(true, std::to_string(points) + " points, exact equality");
    });
  }
}

// linear invariance under invertible factor maps, plus the inclusion version
// for contracting maps, all exact
void suite_uniform(const CheckOptions& opts, std::vector<CheckResult>& out) {
  Recorder rec("uniform", opts, out);
  SeededRng rng(opts.seed);
  const int pairs = std::max(2, opts.samples / 5);
  const int points = std::max(8, opts.samples / 2);
  for (int k = 0; k < pairs; ++k) {
    Body p(rng.vpolytope(2, 4));
    Body q(rng.vpolytope(3, 3));
    MatrixXq t1 = rng.invertible_matrix(2);
    MatrixXq t2 = rng.invertible_matrix(3);
    MatrixXq tk = kron(t1, t2);
    rec.run("pair" + pad2(k) + "/pi-map", [&] {
      Body lhs = image_body(pi_product({p, q}), tk);
      Body rhs = pi_product({image_body(p, t1), image_body(q, t2)});
      for (int i = 0; i < points; ++i) {
        VectorXq u = rng.vector(6);
        if (!gauges_equal(lhs, rhs, u))
          return std::make_pair(false, "gauge mismatch at sample " + std::to_string(i));
      }
      return std::make_pair(true, std::to_string(points) + " points, exact equality");
    });
    rec.run("pair" + pad2(k) + "/eps-map", [&] {
      // g_{T A}(u) = g_A(T^-1 u): avoids vertex-enumerating the product
      Body lhs = eps_product({image_body(p, t1), image_body(q, t2)});
      Body rhs = eps_product({p, q});
      MatrixXq tk_inv = rational_inverse(tk);
      for (int i = 0; i < points; ++i) {
        VectorXq u = rng.vector(6);
        if (gauge(lhs, u).rational() != gauge(rhs, VectorXq(tk_inv * u)).rational())
          return std::make_pair(false, "gauge mismatch at sample " + std::to_string(i));
      }
      return std::make_pair(true, std::to_string(points) + " points, exact equality");
    });
    rec.run("pair" + pad2(k) + "/contraction", [&] {
      // rescale each map so T_i P_i sits inside P_i, then the product image
      // must sit inside the product
      MatrixXq s1 = t1 * (Rational(1) / scale_to_fit(image_body(p, t1), p).rational());
      MatrixXq s2 = t2 * (Rational(1) / scale_to_fit(image_body(q, t2), q).rational());
      Body pi_prod = pi_product({p, q});
      Body pi_image = image_body(pi_prod, MatrixXq(kron(s1, s2)));
      for (const auto& v : vertex_classes(pi_image))
        if (gauge(pi_prod, v).rational() > Rational(1))
          return std::make_pair(false, std::string("pi image vertex escapes the product"));
      // eps side via supports: h_A(n) <= 1 on every facet normal n of B
      Body eps_image = eps_product({image_body(p, s1), image_body(q, s2)});
      Body eps_image_polar = polar(eps_image);
      Body eps_prod = eps_product({p, q});
      for (const auto& n : eps_prod.as_h().normals())
        if (gauge(eps_image_polar, n).rational() > Rational(1))
          return std::make_pair(false, std::string("eps image support exceeds 1"));
      return std::make_pair(true, std::string("pi and eps inclusions exact"));
    });
  }
}

// eps <= omega2 <= pi on cube pairs, exact ends and certified middle
void suite_sandwich(const CheckOptions& opts, std::vector<CheckResult>& out) {
  Recorder rec("sandwich", opts, out);
  for (Index d : {Index(2), Index(3)}) {
    rec.run("cubes-" + std::to_string(d) + "x" + std::to_string(d), [&] {
      SeededRng rng(opts.seed + static_cast<unsigned long>(d));
      std::vector<Body> factors{Body(cube(d)), Body(cube(d))};
      double worst = 0.0;
      for (int i = 0; i < opts.samples; ++i) {
        VectorXq u = rng.vector(d * d);
        Rational ev = eps_norm(u, factors).value.rational();
        Rational pv = pi_norm(u, factors).value.rational();
        if (ev > pv) return std::make_pair(false, "eps > pi at sample " + std::to_string(i));
        GaugeValue om = omega2_norm(u, factors).value;
        double lo_gap = to_double(ev) - om.hi();
        double hi_gap = om.lo() - to_double(pv);
        worst = std::max({worst, lo_gap, hi_gap});
        if (lo_gap > opts.tol)
          return std::make_pair(false, "eps exceeds omega2 at sample " + std::to_string(i));
        if (hi_gap > opts.tol)
          return std::make_pair(false, "omega2 exceeds pi at sample " + std::to_string(i));
      }
      return std::make_pair(true, std::to_string(opts.samples) +
                                      " samples, worst slack " + fmt(worst));
    });
  }
}

// hull products: coincidence on the designated factors, sandwich in general,
// and the hilbertian bracket for the injective hull
void suite_hulls(const CheckOptions& opts, std::vector<CheckResult>& out) {
  Recorder rec("hulls", opts, out);
  rec.run("pi-inj-on-cubes", [&] {
    SeededRng rng(opts.seed);
    Body cube2(cube(2));
    Body inj = pi_inj_product({cube2, cube2});
    Body pi = pi_product({cube2, cube2});
    for (int i = 0; i < opts.samples; ++i) {
      VectorXq u = rng.vector(4);
      if (!gauges_equal(inj, pi, u))
        return std::make_pair(false, "gauge mismatch at sample " + std::to_string(i));
    }
    return std::make_pair(true, std::to_string(opts.samples) + " points, exact equality");
  });
  rec.run("eps-proj-on-crosses", [&] {
    SeededRng rng(opts.seed);
    Body cross2(cross_polytope(2));
    Body proj = eps_proj_product({cross2, cross2});
    Body eps = eps_product({cross2, cross2});
    for (int i = 0; i < opts.samples; ++i) {
      VectorXq u = rng.vector(4);
      if (!gauges_equal(proj, eps, u))
        return std::make_pair(false, "gauge mismatch at sample " + std::to_string(i));
    }
    return std::make_pair(true, std::to_string(opts.samples) + " points, exact equality");
  });
  rec.run("hull-sandwich-mixed", [&] {
    SeededRng rng(opts.seed);
    std::vector<Body> factors{Body(cross_polytope(2)), Body(cube(2))};
    Body eps = eps_product(factors);
    Body pi = pi_product(factors);
    Body inj = pi_inj_product(factors);
    Body proj = eps_proj_product(factors);
    for (int i = 0; i < opts.samples; ++i) {
      VectorXq u = rng.vector(4);
      Rational ge = gauge(eps, u).rational();
      Rational gp = gauge(pi, u).rational();
      Rational gi = gauge(inj, u).rational();
      Rational gq = gauge(proj, u).rational();
      if (!(ge <= gi && gi <= gp && ge <= gq && gq <= gp))
        return std::make_pair(false, "hull gauge escapes [eps, pi] at sample " +
                                         std::to_string(i));
    }
    return std::make_pair(true, std::to_string(opts.samples) +
                                    " points inside [eps, pi], exact");
  });
  rec.run("pi-inj-hilbertian-bracket", [&] {
    SeededRng rng(opts.seed);
    Body cross2(cross_polytope(2));
    Body inj = pi_inj_product({cross2, cross2});
    std::vector<Body> factors{cross2, cross2};
    for (int i = 0; i < opts.samples; ++i) {
      VectorXq u = rng.vector(4);
      double gi = to_double(gauge(inj, u).rational());
      GaugeValue om = omega2_norm(u, factors).value;
      if (gi < om.lo() - opts.tol)
        return std::make_pair(false, "hull gauge below omega2 at sample " + std::to_string(i));
      if (gi > kKgUpper * om.hi() + opts.tol)
        return std::make_pair(false,
                              "hull gauge above K_G * omega2 at sample " + std::to_string(i));
    }
    return std::make_pair(true, std::to_string(opts.samples) +
                                    " samples inside [omega2, K_G omega2]");
  });
}

// extremal-ellipsoid identities: closed forms, product factorization, the
// John-Loewner sandwich, and exact distance certificates
void suite_ellipsoids(const CheckOptions& opts, std::vector<CheckResult>& out) {
  Recorder rec("ellipsoids", opts, out);
  rec.run("loewner-square", [&] {
    EllipsoidFit fit = loewner_ellipsoid(Body(cube(2)));
    double dist = (fit.q - 0.5 * MatrixXd::Identity(2, 2)).norm() / 0.5;
    return std::make_pair(fit.converged && dist < 1e-6,
                          "relative distance to I/2: " + fmt(dist));
  });
  rec.run("john-cross", [&] {
    EllipsoidFit fit = john_ellipsoid(Body(cross_polytope(2)));
    double dist = (fit.q - 2.0 * MatrixXd::Identity(2, 2)).norm() / 2.0;
    return std::make_pair(fit.converged && dist < 1e-6,
                          "relative distance to 2I: " + fmt(dist));
  });
  rec.run("product-pi-loewner", [&] {
    Body square(cube(2));
    ProductFitReport report =
        loewner_john_product_check(square, square, ProductKind::Pi, 1e-3);
    return std::make_pair(report.pass, "relative distance " + fmt(report.distance));
  });
  rec.run("product-eps-john", [&] {
    Body cross2(cross_polytope(2));
    ProductFitReport report =
        loewner_john_product_check(cross2, cross2, ProductKind::Eps, 1e-3);
    return std::make_pair(report.pass, "relative distance " + fmt(report.distance));
  });
  rec.run("john-loewner-sandwich", [&] {
    SeededRng rng(opts.seed);
    Body body(rng.vpolytope(3, 5));
    EllipsoidFit outer = loewner_ellipsoid(body);
    EllipsoidFit inner = john_ellipsoid(body);
    Body outer_e(Ellipsoid(3, outer.q));
    Body inner_e(Ellipsoid(3, inner.q));
    for (const auto& v : vertex_classes(body))
      if (gauge(outer_e, v).hi() > 1.0)
        return std::make_pair(false, std::string("vertex escapes the outer ellipsoid"));
    for (const auto& n : normal_classes(body))
      if (support(inner_e, n).hi() > 1.0)
        return std::make_pair(false, std::string("inner ellipsoid crosses a facet"));
    return std::make_pair(true, std::string("containment certified on all classes"));
  });
  rec.run("bm-certificates-compose", [&] {
    SeededRng rng(opts.seed);
    Body cross2(cross_polytope(2));
    Body square(cube(2));
    BanachMazurCertificate cc =
        make_bm_certificate(cross2, square, MatrixXq(MatrixXq::Identity(2, 2)));
    BanachMazurCertificate prod = bm_product_certificate({cc, cc}, ProductKind::Pi);
    if (prod.lambda != cc.lambda * cc.lambda)
      return std::make_pair(false, std::string("product lambda is not the factor product"));
    Body p(rng.vpolytope(2, 4));
    MatrixXq t = rng.invertible_matrix(2);
    BanachMazurCertificate iso = make_bm_certificate(p, image_body(p, t), t);
    BanachMazurCertificate prod2 = bm_product_certificate({iso, iso}, ProductKind::Eps);
    if (prod2.lambda != Rational(1))
      return std::make_pair(false, std::string("isomorphic pair composed to lambda != 1"));
    return std::make_pair(true, "lambda " + format_rational(prod.lambda) +
                                    " and 1, verified exactly");
  });
}

// commutant dimensions and product symmetries, all exact rational ranks
void suite_symmetries(const CheckOptions& opts, std::vector<CheckResult>& out) {
  Recorder rec("symmetries", opts, out);
  rec.run("signed-permutations-irreducible", [&] {
    for (Index d : {Index(2), Index(3)}) {
      Index dim = commutant_dimension(signed_permutation_generators(d));
      if (dim != 1)
        return std::make_pair(false, "commutant dimension " + std::to_string(dim) +
                                         " in R^" + std::to_string(d));
    }
    return std::make_pair(true, std::string("commutant dimension 1 in R^2 and R^3"));
  });
  rec.run("product-group-irreducible", [&] {
    auto gens = kron_pairs(signed_permutation_generators(2), signed_permutation_generators(3));
    Index dim = commutant_dimension(gens);
    return std::make_pair(dim == 1, "commutant dimension " + std::to_string(dim) +
                                        " on R^6");
  });
  rec.run("small-groups-reducible", [&] {
    MatrixXq minus = MatrixXq::Identity(2, 2);
    minus *= Rational(-1);
    Index dim_center = commutant_dimension({minus});
    auto gens3 = signed_permutation_generators(3);
    std::vector<MatrixXq> perms(gens3.begin() + 1, gens3.end());
    Index dim_perm = commutant_dimension(perms);
    bool ok = dim_center == 4 && dim_perm == 2;
    return std::make_pair(ok, "{+-I} commutant " + std::to_string(dim_center) +
                                  ", permutations-only commutant " + std::to_string(dim_perm));
  });
  rec.run("products-inherit-symmetries", [&] {
    auto gens = kron_pairs(signed_permutation_generators(2), signed_permutation_generators(2));
    Body square(cube(2));
    Body cross2(cross_polytope(2));
    Body pi = pi_product({square, square});
    Body eps = eps_product({cross2, cross2});
    for (const auto& g : gens)
      if (!is_symmetry(pi, g) || !is_symmetry(eps, g))
        return std::make_pair(false, std::string("factor symmetry fails on a product"));
    return std::make_pair(enough_symmetries(gens),
                          std::string("all generators preserve both products, commutant 1"));
  });
}

// pi/omega2 ratios on cube factors stay under the Grothendieck bound and the
// designated witnesses land where they should
void suite_grothendieck(const CheckOptions& opts, std::vector<CheckResult>& out) {
  Recorder rec("grothendieck", opts, out);
  rec.run("ratio-bound-2x2", [&] {
    RatioExperiment exp = grothendieck_experiment(2, 2, opts.samples, opts.seed);
    for (const auto& s : exp.samples)
      if (s.numerator.lo > kKgUpper * s.denominator.hi + opts.tol)
        return std::make_pair(false, "sample " + s.label + " exceeds the bound");
    if (exp.max_ratio_hi > kKgUpper * (1.0 + 1e-6))
      return std::make_pair(false, "ratio envelope " + fmt(exp.max_ratio_hi) +
                                       " exceeds " + fmt(kKgUpper));
    return std::make_pair(true, "max certified ratio " + fmt(exp.max_ratio_lo) + " at " +
                                    exp.argmax_label + ", envelope " + fmt(exp.max_ratio_hi));
  });
  rec.run("witness-hadamard", [&] {
    RatioExperiment exp = grothendieck_experiment(2, 2, 2, opts.seed);
    for (const auto& s : exp.samples) {
      if (s.label == "hadamard2") {
        double root2 = std::sqrt(2.0);
        bool ok = s.ratio_lo >= root2 - 1e-3 && s.ratio_hi <= root2 + 1e-3;
        return std::make_pair(ok, "ratio in [" + fmt(s.ratio_lo) + ", " + fmt(s.ratio_hi) + "]");
      }
    }
    return std::make_pair(false, std::string("hadamard2 witness missing"));
  });
  rec.run("ratio-bound-3x3", [&] {
    RatioExperiment exp =
        grothendieck_experiment(3, 3, std::max(2, opts.samples / 5), opts.seed);
    for (const auto& s : exp.samples)
      if (s.numerator.lo > kKgUpper * s.denominator.hi + opts.tol)
        return std::make_pair(false, "sample " + s.label + " exceeds the bound");
    return std::make_pair(true, "max certified ratio " + fmt(exp.max_ratio_lo) + " at " +
                                    exp.argmax_label);
  });
}

}  // namespace

const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names{
      "duality", "uniform", "sandwich", "hulls", "ellipsoids", "symmetries", "grothendieck"};
  return names;
}

std::vector<CheckResult> run_check_suite(const std::string& suite, const CheckOptions& opts) {
  std::vector<CheckResult> out;
  bool all = suite == "all";
  bool known = all;
  auto want = [&](const char* name) { return all || suite == name; };
  if (want("duality")) suite_duality(opts, out), known = true;
  if (want("uniform")) suite_uniform(opts, out), known = true;
  if (want("sandwich")) suite_sandwich(opts, out), known = true;
  if (want("hulls")) suite_hulls(opts, out), known = true;
  if (want("ellipsoids")) suite_ellipsoids(opts, out), known = true;
  if (want("symmetries")) suite_symmetries(opts, out), known = true;
  if (want("grothendieck")) suite_grothendieck(opts, out), known = true;
  if (!known) throw ParseError("unknown check suite: " + suite);
  std::sort(out.begin(), out.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return out;
}

}  // namespace symtensor
