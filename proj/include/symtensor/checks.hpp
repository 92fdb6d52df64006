#pragma once

#include "symtensor/body.hpp"

#include <string>
#include <vector>

namespace symtensor {

// One property check.  Everything except `seconds` is a pure function of
// (suite, options), so reports stay byte-identical across runs; timings are
// reported separately.  `repro` reruns the whole suite from the CLI.
struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
  std::string repro;
  double seconds = 0.0;
};

struct CheckOptions {
  unsigned long seed = 1;
  double tol = 1e-6;
  int samples = 25;
};

// Registered suite names, in canonical order (excludes the "all" alias).
const std::vector<std::string>& check_suite_names();

// Runs one suite ("all" runs every suite); results sorted by name.  Unknown
// suite names throw ParseError.  Checks never throw: an exception inside a
// property becomes a failed result carrying the error text.
std::vector<CheckResult> run_check_suite(const std::string& suite,
                                         const CheckOptions& opts = {});

}  // namespace symtensor
