#pragma once

#include "symtensor/rational.hpp"

#include <optional>
#include <vector>

namespace symtensor {

enum class Sense { Eq, Le, Ge };
enum class VarKind { NonNeg, Free };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// min c'x  s.t.  A x (sense) b,  x_j >= 0 or free.
struct LinProgram {
  MatrixXq a;
  VectorXq b;
  VectorXq c;
  std::vector<Sense> senses;   // one per row; empty means all Eq
  std::vector<VarKind> vars;   // one per column; empty means all NonNeg
};

// Exact certificates, recheckable by substitution:
//  - Optimal: x primal feasible, y dual feasible, c'x == objective == b'y.
//  - Infeasible: Farkas vector y with y'A (sign-compatible w/ vars) and y'b > 0.
//  - Unbounded: feasible x plus ray r with A r (sense-compatible) 0, c'r < 0.
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  Rational objective;
  VectorXq x;
  VectorXq dual;
  VectorXq ray;
  int pivots = 0;
};

LpSolution lp_solve(const LinProgram& prog);

// Substitution check of an LpSolution against its program.  Verifies primal
// feasibility, dual feasibility, and objective agreement (or the Farkas /
// ray identities); exact arithmetic, no tolerances.
bool lp_verify(const LinProgram& prog, const LpSolution& sol, std::string* why = nullptr);

// min sum_k |c_k|  s.t.  W c = target.  The columns of W are the generators;
// the optimum is the gauge of `target` in conv(+-columns).  Infeasible when
// target is outside the column span.
LpSolution lp_min_l1(const MatrixXq& w, const VectorXq& target);

// The LinProgram behind lp_min_l1 (for certificate rechecks).
LinProgram lp_min_l1_program(const MatrixXq& w, const VectorXq& target);

}  // namespace symtensor
