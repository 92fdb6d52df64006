#include <doctest.h>

#include "symtensor/linprog.hpp"

using namespace symtensor;

namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

}  // namespace

TEST_CASE("min x subject to x >= 3") {
  LinProgram p;
  p.a = MatrixXq::Constant(1, 1, q(1));
  p.b = VectorXq::Constant(1, q(3));
  p.c = VectorXq::Constant(1, q(1));
  p.senses = {Sense::Ge};
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == q(3));
  CHECK(sol.x[0] == q(3));
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("gauge LP of the (2,1),(1,2) polytope at (1,1)") {
  // min |c1| + |c2| with c1*(2,1) + c2*(1,2) = (1,1); signs split as p - q
  LinProgram p;
  p.a.resize(2, 4);
  p.a << q(2), q(1), q(-2), q(-1),
         q(1), q(2), q(-1), q(-2);
  p.b.resize(2);
  p.b << q(1), q(1);
  p.c = VectorXq::Constant(4, q(1));
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == q(2, 3));
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("free variables via VarKind") {
  // min y s.t. y >= x - 2 and y >= -x, both free: minimax of (x-2, -x),
  // optimum y = -1 at x = 1
  LinProgram p;
  p.a.resize(2, 2);
  p.a << q(-1), q(1),   // y - x >= -2
         q(1), q(1);    // y + x >= 0
  p.b.resize(2);
  p.b << q(-2), q(0);
  p.c.resize(2);
  p.c << q(0), q(1);
  p.senses = {Sense::Ge, Sense::Ge};
  p.vars = {VarKind::Free, VarKind::Free};
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == q(-1));
  CHECK(sol.x[0] == q(1));
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("infeasible program yields a Farkas certificate") {
  // x <= -1, x >= 0
  LinProgram p;
  p.a = MatrixXq::Constant(1, 1, q(1));
  p.b = VectorXq::Constant(1, q(-1));
  p.c = VectorXq::Constant(1, q(0));
  p.senses = {Sense::Le};
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Infeasible);
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("unbounded program yields an improving ray") {
  LinProgram p;
  p.a = MatrixXq::Constant(1, 1, q(1));
  p.b = VectorXq::Constant(1, q(0));
  p.c = VectorXq::Constant(1, q(-1));
  p.senses = {Sense::Ge};
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Unbounded);
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("equality rows with artificial start") {
  // min x1 + x2 s.t. x1 + 2 x2 = 3, 3 x1 + x2 = 4  ->  x = (1, 1)
  LinProgram p;
  p.a.resize(2, 2);
  p.a << q(1), q(2), q(3), q(1);
  p.b.resize(2);
  p.b << q(3), q(4);
  p.c = VectorXq::Constant(2, q(1));
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == q(1));
  CHECK(sol.x[1] == q(1));
  CHECK(sol.objective == q(2));
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("redundant equality rows survive") {
  LinProgram p;
  p.a.resize(2, 1);
  p.a << q(1), q(2);
  p.b.resize(2);
  p.b << q(5), q(10);
  p.c = VectorXq::Constant(1, q(1));
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x[0] == q(5));
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("degenerate tie-breaks terminate (Bland)") {
  // classic cycling-prone instance (Beale); Bland must terminate
  LinProgram p;
  p.a.resize(3, 4);
  p.a << q(1, 4), q(-8), q(-1), q(9),
         q(1, 2), q(-12), q(-1, 2), q(3),
         q(0), q(0), q(1), q(0);
  p.b.resize(3);
  p.b << q(0), q(0), q(1);
  p.c.resize(4);
  p.c << q(-3, 4), q(20), q(-1, 2), q(6);
  p.senses = {Sense::Le, Sense::Le, Sense::Le};
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == q(-5, 4));
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}

TEST_CASE("dual values price constraints") {
  // min 2x + 3y s.t. x + y >= 4, x >= 1, y >= 0 (rows), vars nonneg
  LinProgram p;
  p.a.resize(2, 2);
  p.a << q(1), q(1), q(1), q(0);
  p.b.resize(2);
  p.b << q(4), q(1);
  p.c.resize(2);
  p.c << q(2), q(3);
  p.senses = {Sense::Ge, Sense::Ge};
  auto sol = lp_solve(p);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == q(8));
  CHECK(sol.x[0] == q(4));
  // the binding row x + y >= 4 carries price 2, the slack row price 0
  CHECK(sol.dual[0] == q(2));
  CHECK(sol.dual[1] == q(0));
  std::string why;
  CHECK_MESSAGE(lp_verify(p, sol, &why), why);
}
