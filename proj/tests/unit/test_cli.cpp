#include <doctest.h>

#include "symtensor/serialization.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace symtensor;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "symtensor_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

// runs the CLI with stdout/stderr captured to files; returns the exit code
int run_cli(const std::string& args, const fs::path& stdout_file) {
  std::string cmd = std::string(SYMTENSOR_CLI_PATH) + " " + args + " > " +
                    quoted(stdout_file) + " 2>&1";
  int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("make writes loadable builtin balls") {
  fs::path dir = scratch_dir();
  fs::path body = dir / "cube3.json";
  fs::path log = dir / "make.log";
  REQUIRE(run_cli("make --kind bp --p inf --d 3 --out " + quoted(body), log) == 0);
  Body cube3 = load_body(body.string());
  CHECK(cube3.kind() == BodyKind::HPolytope);
  CHECK(cube3.dim() == 3);
  CHECK(cube3.as_h().normals().size() == 3);

  fs::path ball = dir / "ball2.json";
  REQUIRE(run_cli("make --kind bp --p 2 --d 2 --out " + quoted(ball), log) == 0);
  CHECK(load_body(ball.string()).kind() == BodyKind::Ellipsoid);
}

TEST_CASE("seeded random bodies are byte-identical across runs") {
  fs::path dir = scratch_dir();
  fs::path a = dir / "rv_a.json";
  fs::path b = dir / "rv_b.json";
  fs::path log = dir / "rv.log";
  REQUIRE(run_cli("make --kind random-v --d 2 --gens 4 --seed 7 --out " + quoted(a), log) == 0);
  REQUIRE(run_cli("make --kind random-v --d 2 --gens 4 --seed 7 --out " + quoted(b), log) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("vpolytope") != std::string::npos);
}

TEST_CASE("product builds and saves a pi product with provenance") {
  fs::path dir = scratch_dir();
  fs::path cube2 = dir / "cube2.json";
  fs::path prod = dir / "pi_prod.json";
  fs::path log = dir / "prod.log";
  REQUIRE(run_cli("make --kind bp --p inf --d 2 --out " + quoted(cube2), log) == 0);
  REQUIRE(run_cli("product --kind pi " + quoted(cube2) + " " + quoted(cube2) + " --out " +
                      quoted(prod),
                  log) == 0);
  CHECK(slurp(log).find("\"raw_classes\"") != std::string::npos);
  Body body = load_body(prod.string());
  CHECK(body.kind() == BodyKind::VPolytope);
  CHECK(body.dim() == 4);
  CHECK(body.as_v().generators().size() == 4);
}

TEST_CASE("gauge and norms emit exact values and certified intervals") {
  fs::path dir = scratch_dir();
  fs::path cube2 = dir / "cube2n.json";
  fs::path out = dir / "norms.json";
  fs::path log = dir / "norms.log";
  REQUIRE(run_cli("make --kind bp --p inf --d 2 --out " + quoted(cube2), log) == 0);
  REQUIRE(run_cli("norms --point 1,1,1,-1 " + quoted(cube2) + " " + quoted(cube2) + " --out " +
                      quoted(out),
                  log) == 0);
  Json j = Json::parse(slurp(out));
  CHECK(j["format"] == "symtensor/1");
  CHECK(j["eps"]["value"] == "1");
  CHECK(j["pi"]["value"] == "2");
  double lo = j["omega2"]["value"]["lo"].get<double>();
  double hi = j["omega2"]["value"]["hi"].get<double>();
  double root2 = 1.4142135623730951;
  CHECK(lo <= root2);
  CHECK(hi >= root2);
  CHECK(hi - lo < 1e-4);

  fs::path gout = dir / "gauge.json";
  REQUIRE(run_cli("gauge " + quoted(cube2) + " --point 1/2,-1/2 --out " + quoted(gout), log) == 0);
  CHECK(Json::parse(slurp(gout))["value"] == "1/2");
  REQUIRE(run_cli("gauge " + quoted(cube2) + " --point 1,1 --support --out " + quoted(gout),
                  log) == 0);
  CHECK(Json::parse(slurp(gout))["value"] == "2");
}

TEST_CASE("check writes deterministic reports and honors the exit contract") {
  fs::path dir = scratch_dir();
  fs::path r1 = dir / "rep1.json";
  fs::path r2 = dir / "rep2.json";
  fs::path log = dir / "check.log";
  REQUIRE(run_cli("check duality --seed 3 --samples 8 --out " + quoted(r1), log) == 0);
  REQUIRE(run_cli("check duality --seed 3 --samples 8 --out " + quoted(r2), log) == 0);
  Json a = Json::parse(slurp(r1));
  Json b = Json::parse(slurp(r2));
  CHECK(a["summary"]["failed"] == 0);
  CHECK(a["checks"].size() > 0);
  a.erase("timings");
  b.erase("timings");
  CHECK(a.dump() == b.dump());
  // csv sibling exists with one row per check
  std::string csv = slurp(dir / "rep1.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(a["checks"].size()) + 1);

  CHECK(run_cli("report " + quoted(r1), log) == 0);
  CHECK(run_cli("check nonsense", log) != 0);
  CHECK(run_cli("gauge missing.json --point 1", log) != 0);
}
