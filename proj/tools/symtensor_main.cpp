#include <CLI11.hpp>

#include "symtensor/checks.hpp"
#include "symtensor/norms.hpp"
#include "symtensor/rng.hpp"
#include "symtensor/serialization.hpp"
#include "symtensor/tensor.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace symtensor;

constexpr const char* kVersion = "0.1.0";

VectorXq parse_point(const std::string& text) {
  std::vector<Rational> vals;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty coordinate in point: " + text);
    vals.push_back(parse_rational(item.substr(a, b - a + 1)));
  }
  if (vals.empty()) throw ParseError("empty point");
  VectorXq v(static_cast<Index>(vals.size()));
  for (Index i = 0; i < v.size(); ++i) v[i] = vals[static_cast<size_t>(i)];
  return v;
}

Json gauge_value_json(const GaugeValue& g) {
  if (g.is_exact()) return format_rational(g.rational());
  return Json{{"lo", g.lo()}, {"hi", g.hi()}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_text(out_path, j.dump(2) + "\n");
}

int cmd_make(const std::string& kind, const std::string& p, Index d, Index gens,
             unsigned long seed, const std::string& out) {
  Body body = [&] {
    if (kind == "bp") return unit_ball(p, d);
    SeededRng rng(seed);
    if (kind == "random-v") return Body(rng.vpolytope(d, gens));
    if (kind == "random-h") return Body(rng.hpolytope(d, gens));
    if (kind == "ellipsoid") return Body(rng.ellipsoid(d));
    throw ParseError("unknown make kind: " + kind +
                     " (expected bp | random-v | random-h | ellipsoid)");
  }();
  save_body(body, out);
  std::cout << "wrote " << kind << " body, dim " << body.dim() << ", to " << out << "\n";
  return 0;
}

int cmd_product(const std::string& kind_name, bool dual,
                const std::vector<std::string>& files, const std::string& out) {
  std::vector<Body> factors;
  for (const auto& f : files) factors.push_back(load_body(f));
  Provenance prov;
  Body body = make_product(parse_product_kind(kind_name), dual, factors, &prov);
  save_body(body, out);
  Json info{{"format", "symtensor/1"},
            {"kind", "product"},
            {"product", prov.kind.empty() ? kind_name : prov.kind},
            {"dim", body.dim()},
            {"out", out},
            {"provenance", provenance_to_json(prov)}};
  std::cout << info.dump(2) << "\n";
  return 0;
}

int cmd_gauge(const std::string& body_file, const std::string& point, bool support_side,
              const std::string& out) {
  Body body = load_body(body_file);
  VectorXq x = parse_point(point);
  if (x.size() != body.dim())
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, body dim is " +
                         std::to_string(body.dim()));
  GaugeValue g = support_side ? support(body, x) : gauge(body, x);
  Json j{{"format", "symtensor/1"},
         {"kind", support_side ? "support" : "gauge"},
         {"body", body_file},
         {"value", gauge_value_json(g)}};
  emit(j, out);
  return 0;
}

int cmd_norms(const std::string& point, const std::vector<std::string>& files,
              const std::string& out) {
  std::vector<Body> factors;
  for (const auto& f : files) factors.push_back(load_body(f));
  VectorXq u = parse_point(point);
  Json j{{"format", "symtensor/1"}, {"kind", "norms"}};
  j["dims"] = Json::array();
  for (const auto& f : factors) j["dims"].push_back(f.dim());
  int failures = 0;
  for (const char* norm : {"eps", "pi", "omega2"}) {
    try {
      NormReport r = tensor_norm(norm, u, factors);
      j[norm] = Json{{"value", gauge_value_json(r.value)},
                     {"certified", r.certified},
                     {"certificate", r.certificate}};
    } catch (const std::exception& e) {
      j[norm] = Json{{"error", e.what()}};
      ++failures;
    }
  }
  emit(j, out);
  return failures == 0 ? 0 : 3;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

int cmd_check(const std::string& suite, unsigned long seed, double tol, int samples,
              const std::string& out) {
  CheckOptions opts;
  opts.seed = seed;
  opts.tol = tol;
  opts.samples = samples;
  std::vector<CheckResult> results = run_check_suite(suite, opts);
  int failed = 0;
  Json checks = Json::array();
  Json timings = Json::array();
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    checks.push_back(Json{{"name", r.name},
                          {"suite", r.suite},
                          {"pass", r.pass},
                          {"detail", r.detail},
                          {"repro", r.repro}});
    timings.push_back(Json{{"name", r.name}, {"seconds", r.seconds}});
  }
  Json report{{"format", "symtensor/1"},
              {"kind", "report"},
              {"suite", suite},
              {"environment",
               Json{{"version", kVersion}, {"seed", seed}, {"tol", tol}, {"samples", samples}}},
              {"summary",
               Json{{"total", results.size()},
                    {"passed", results.size() - static_cast<size_t>(failed)},
                    {"failed", failed}}},
              {"checks", checks},
              {"timings", timings}};
  if (!out.empty()) {
    write_text(out, report.dump(2) + "\n");
    std::string csv = "name,suite,status,seconds\n";
    for (const auto& r : results)
      csv += csv_escape(r.name) + "," + r.suite + "," + (r.pass ? "pass" : "fail") + "," +
             format_double(r.seconds) + "\n";
    std::string csv_path = out;
    size_t dot = csv_path.find_last_of('.');
    if (dot != std::string::npos && csv_path.find('/', dot) == std::string::npos)
      csv_path = csv_path.substr(0, dot);
    write_text(csv_path + ".csv", csv);
  }
  for (const auto& r : results)
    if (!r.pass)
      std::cout << "FAIL " << r.name << ": " << r.detail << "\n  repro: " << r.repro << "\n";
  std::cout << "suite " << suite << ": passed " << (results.size() - static_cast<size_t>(failed))
            << "/" << results.size() << "\n";
  return failed == 0 ? 0 : 1;
}

int cmd_report(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read " + file);
  Json j = Json::parse(in);
  if (j.value("format", "") != "symtensor/1" || j.value("kind", "") != "report")
    throw ParseError(file + " is not a symtensor/1 report");
  const auto& summary = j.at("summary");
  for (const auto& c : j.at("checks")) {
    if (!c.value("pass", false))
      std::cout << "FAIL " << c.value("name", "?") << ": " << c.value("detail", "") << "\n";
  }
  std::cout << "suite " << j.value("suite", "?") << ": passed " << summary.at("passed").dump()
            << "/" << summary.at("total").dump() << "\n";
  return summary.value("failed", 0) == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor products of 0-symmetric convex bodies: construction, norms, checks"};
  app.require_subcommand(1);

  unsigned long seed = 1;
  double tol = 1e-6;
  int samples = 25;
  int jobs = 1;
  std::string out;

  auto* mk = app.add_subcommand("make", "write a builtin or seeded random body file");
  std::string mk_kind, mk_p = "inf";
  Index mk_d = 2, mk_gens = 4;
  mk->add_option("--kind", mk_kind, "bp | random-v | random-h | ellipsoid")->required();
  mk->add_option("--p", mk_p, "ball exponent for bp: 1 | 2 | inf (default inf)");
  mk->add_option("--d", mk_d, "dimension")->check(CLI::PositiveNumber);
  mk->add_option("--gens", mk_gens, "generator classes for random polytopes")
      ->check(CLI::PositiveNumber);
  mk->add_option("--seed", seed, "corpus seed");
  mk->add_option("--out", out, "output body file")->required();

  auto* pr = app.add_subcommand("product", "build a tensor product of body files");
  std::string pr_kind;
  bool pr_dual = false;
  std::vector<std::string> pr_files;
  pr->add_option("--kind", pr_kind, "pi | eps | 2 | omega2 | pi_inj | eps_proj")->required();
  pr->add_flag("--dual", pr_dual, "dual product: polar of the product of the polars");
  pr->add_option("factors", pr_files, "factor body files")->required()->expected(2, -1);
  pr->add_option("--out", out, "output body file")->required();

  auto* ga = app.add_subcommand("gauge", "evaluate the gauge or support of a body");
  std::string ga_body, ga_point;
  bool ga_support = false;
  ga->add_option("body", ga_body, "body file")->required();
  ga->add_option("--point", ga_point, "comma-separated rational coordinates")->required();
  ga->add_flag("--support", ga_support, "evaluate the support function instead");
  ga->add_option("--out", out, "write the result JSON here instead of stdout");

  auto* no = app.add_subcommand("norms", "evaluate eps, pi, omega2 of a tensor");
  std::string no_point;
  std::vector<std::string> no_files;
  no->add_option("--point", no_point, "tensor entries, row-major, comma-separated rationals")
      ->required();
  no->add_option("factors", no_files, "two factor body files")->required()->expected(2);
  no->add_option("--out", out, "write the result JSON here instead of stdout");

  auto* ck = app.add_subcommand("check", "run a seeded property suite");
  std::string ck_suite;
  ck->add_option("suite", ck_suite,
                 "duality | uniform | sandwich | hulls | ellipsoids | symmetries | "
                 "grothendieck | all")
      ->required();
  ck->add_option("--seed", seed, "corpus seed");
  ck->add_option("--tol", tol, "interval slack for certified comparisons")
      ->check(CLI::PositiveNumber);
  ck->add_option("--samples", samples, "sample count per property")->check(CLI::PositiveNumber);
  ck->add_option("--jobs", jobs, "suite concurrency width (this build runs sequentially)")
      ->check(CLI::PositiveNumber);
  ck->add_option("--out", out, "write the JSON report here (plus a .csv sibling)");

  auto* rp = app.add_subcommand("report", "summarize a previously written report file");
  std::string rp_file;
  rp->add_option("report", rp_file, "report JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(mk)) return cmd_make(mk_kind, mk_p, mk_d, mk_gens, seed, out);
    if (app.got_subcommand(pr)) return cmd_product(pr_kind, pr_dual, pr_files, out);
    if (app.got_subcommand(ga)) return cmd_gauge(ga_body, ga_point, ga_support, out);
    if (app.got_subcommand(no)) return cmd_norms(no_point, no_files, out);
    if (app.got_subcommand(ck)) return cmd_check(ck_suite, seed, tol, samples, out);
    if (app.got_subcommand(rp)) return cmd_report(rp_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
