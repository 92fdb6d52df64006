#include "symtensor/linprog.hpp"

#include <limits>
#include <sstream>

namespace symtensor {

namespace {

struct Standardized {
  MatrixXq a;               // equality form, b >= 0
  VectorXq b;
  VectorXq c;
  std::vector<int> col_var;   // original variable index, -1 for slack/surplus
  std::vector<int> col_sign;  // +1 or -1 (negative half of a split free var)
  std::vector<int> flip;      // +1 / -1 per original row
  Index n_real = 0;           // columns before artificials
};

Standardized standardize(const LinProgram& prog) {
  const Index m = prog.a.rows();
  const Index n = prog.a.cols();
  if (prog.b.size() != m) throw DimensionError("lp: b size vs rows");
  if (prog.c.size() != n) throw DimensionError("lp: c size vs cols");
  if (!prog.senses.empty() && static_cast<Index>(prog.senses.size()) != m)
    throw DimensionError("lp: senses size vs rows");
  if (!prog.vars.empty() && static_cast<Index>(prog.vars.size()) != n)
    throw DimensionError("lp: vars size vs cols");

  auto sense_of = [&](Index i) { return prog.senses.empty() ? Sense::Eq : prog.senses[i]; };
  auto kind_of = [&](Index j) { return prog.vars.empty() ? VarKind::NonNeg : prog.vars[j]; };

  Standardized s;
  s.flip.assign(m, 1);
  std::vector<Sense> senses(m);
  for (Index i = 0; i < m; ++i) {
    senses[i] = sense_of(i);
    if (prog.b[i] < 0) {
      s.flip[i] = -1;
      if (senses[i] == Sense::Le)
        senses[i] = Sense::Ge;
      else if (senses[i] == Sense::Ge)
        senses[i] = Sense::Le;
    }
  }

  Index cols = 0;
  for (Index j = 0; j < n; ++j) cols += kind_of(j) == VarKind::Free ? 2 : 1;
  Index slack_count = 0;
  for (Index i = 0; i < m; ++i)
    if (senses[i] != Sense::Eq) ++slack_count;
  cols += slack_count;

  s.a = MatrixXq::Zero(m, cols);
  s.b = VectorXq(m);
  s.c = VectorXq::Zero(cols);
  s.col_var.assign(cols, -1);
  s.col_sign.assign(cols, 1);

  Index col = 0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) s.a(i, col) = Rational(s.flip[i]) * prog.a(i, j);
    s.c[col] = prog.c[j];
    s.col_var[col] = static_cast<int>(j);
    ++col;
    if (kind_of(j) == VarKind::Free) {
      for (Index i = 0; i < m; ++i) s.a(i, col) = -s.a(i, col - 1);
      s.c[col] = -prog.c[j];
      s.col_var[col] = static_cast<int>(j);
      s.col_sign[col] = -1;
      ++col;
    }
  }
  for (Index i = 0; i < m; ++i) {
    s.b[i] = Rational(s.flip[i]) * prog.b[i];
    if (senses[i] == Sense::Le)
      s.a(i, col++) = 1;
    else if (senses[i] == Sense::Ge)
      s.a(i, col++) = -1;
  }
  s.n_real = cols;
  return s;
}

// Dense tableau with an appended basis-inverse tracking block:
//   columns [0, n_real) problem columns, [n_real, n_real+m) tracking block,
//   column n_real+m the rhs.  Dual values fall out of the tracking block of
//   the reduced-cost row.
class Tableau {
 public:
  Tableau(const Standardized& s) : m_(s.a.rows()), n_(s.n_real) {
    t_ = MatrixXq::Zero(m_, n_ + m_ + 1);
    t_.leftCols(n_) = s.a;
    t_.block(0, n_, m_, m_) = MatrixXq::Identity(m_, m_);
    t_.col(n_ + m_) = s.b;
    basis_.assign(m_, -1);
    dead_.assign(m_, false);
  }

  Index rows() const { return m_; }
  Index cols() const { return n_; }
  const Rational& rhs(Index i) const { return t_(i, n_ + m_); }
  const Rational& at(Index i, Index j) const { return t_(i, j); }
  int basic(Index i) const { return basis_[i]; }
  bool dead(Index i) const { return dead_[i]; }
  void mark_dead(Index i) { dead_[i] = true; }
  void set_basic(Index i, int col) { basis_[i] = col; }

  void pivot(Index row, Index col) {
    Rational p = t_(row, col);
    t_.row(row) /= p;
    for (Index r = 0; r < m_; ++r) {
      if (r == row || t_(r, col) == 0) continue;
      t_.row(r) -= t_(r, col) * t_.row(row);
    }
    basis_[row] = static_cast<int>(col);
    ++pivots_;
  }

  // reduced costs under cost vector c (size n_), plus tracking block and value
  struct ObjRow {
    VectorXq red;      // size n_
    VectorXq track;    // size m_; y_i = -track[i]
    Rational value;    // c_B' x_B
  };

  ObjRow objective_row(const VectorXq& c) const {
    ObjRow o;
    o.red = c;
    o.track = VectorXq::Zero(m_);
    o.value = 0;
    for (Index i = 0; i < m_; ++i) {
      if (basis_[i] < 0) continue;
      const Rational& cb = c[basis_[i]];
      if (cb == 0) continue;
      o.red -= cb * t_.row(i).head(n_).transpose();
      o.track -= cb * t_.row(i).segment(n_, m_).transpose();
      o.value += cb * rhs(i);
    }
    return o;
  }

  int pivots_ = 0;

 private:
  Index m_, n_;
  MatrixXq t_;
  std::vector<int> basis_;
  std::vector<bool> dead_;
};

// Bland's rule simplex on the tableau.  `allowed` masks columns that may
// enter.  Returns the entering column on unboundedness, -1 on optimality.
Index run_simplex(Tableau& t, const VectorXq& c, const std::vector<bool>& allowed,
                  Tableau::ObjRow& obj) {
  obj = t.objective_row(c);
  for (;;) {
    Index enter = -1;
    for (Index j = 0; j < t.cols(); ++j) {
      if (!allowed[j]) continue;
      if (obj.red[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return -1;

    Index leave = -1;
    Rational best_ratio;
    for (Index i = 0; i < t.rows(); ++i) {
      if (t.dead(i)) continue;
      const Rational& d = t.at(i, enter);
      if (d <= 0) continue;
      Rational ratio = t.rhs(i) / d;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basic(i) < t.basic(leave))) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) return enter;  // unbounded direction

    t.pivot(leave, enter);
    obj = t.objective_row(c);
  }
}

}  // namespace

LpSolution lp_solve(const LinProgram& prog) {
  const Index m = prog.a.rows();
  const Index n = prog.a.cols();
  Standardized s = standardize(prog);
  Tableau t(s);

  // initial basis: slack columns where they carry +1, artificials elsewhere
  std::vector<Index> artificial_rows;
  for (Index i = 0; i < m; ++i) {
    int found = -1;
    for (Index j = s.n_real; j-- > 0;) {
      if (s.col_var[j] != -1) break;  // slacks sit at the tail
      if (s.a(i, j) == 1) {
        bool clean = true;
        for (Index r = 0; r < m && clean; ++r)
          if (r != i && s.a(r, j) != 0) clean = false;
        if (clean) {
          found = static_cast<int>(j);
          break;
        }
      }
    }
    if (found >= 0)
      t.set_basic(i, found);
    else
      artificial_rows.push_back(i);
  }

  std::vector<bool> allowed(s.n_real, true);
  Tableau::ObjRow obj;
  LpSolution sol;

  if (!artificial_rows.empty()) {
    // Phase I with implicit artificials: a row without a basis column behaves
    // as if an artificial (cost 1) were basic there, and leaves for good once
    // some real column pivots in.  Reduced costs are the negated sums of the
    // still-artificial rows.
    for (;;) {
      VectorXq red = VectorXq::Zero(s.n_real);
      VectorXq track = VectorXq::Zero(m);
      Rational value = 0;
      for (Index i : artificial_rows) {
        if (t.basic(i) >= 0) continue;
        for (Index j = 0; j < s.n_real; ++j) red[j] -= t.at(i, j);
        for (Index j = 0; j < m; ++j) track[j] -= t.at(i, s.n_real + j);
        value += t.rhs(i);
      }
      Index enter = -1;
      for (Index j = 0; j < s.n_real; ++j) {
        if (red[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        if (value > 0) {
          sol.status = LpStatus::Infeasible;
          sol.dual = VectorXq(m);
          for (Index i = 0; i < m; ++i) sol.dual[i] = Rational(s.flip[i]) * (-track[i]);
          sol.pivots = t.pivots_;
          return sol;
        }
        break;
      }
      Index leave = -1;
      Rational best_ratio;
      for (Index i = 0; i < m; ++i) {
        const Rational& d = t.at(i, enter);
        if (d <= 0) continue;
        Rational ratio = t.rhs(i) / d;
        // ties: smallest basic index; artificial rows (basic -1) kicked first
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && t.basic(i) < t.basic(leave))) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) throw SolverError("phase I unbounded; cannot happen");
      t.pivot(leave, enter);
    }
    // pivot remaining zero-level artificials out, or mark rows redundant
    for (Index i : artificial_rows) {
      if (t.basic(i) >= 0) continue;
      Index piv = -1;
      for (Index j = 0; j < s.n_real; ++j) {
        if (t.at(i, j) != 0) {
          piv = j;
          break;
        }
      }
      if (piv >= 0)
        t.pivot(i, piv);
      else
        t.mark_dead(i);
    }
  }

  Index unbounded_col = run_simplex(t, s.c, allowed, obj);

  // primal point in original variables
  auto extract_x = [&]() {
    VectorXq x = VectorXq::Zero(n);
    for (Index i = 0; i < m; ++i) {
      int bj = t.basic(i);
      if (bj < 0 || t.dead(i)) continue;
      int v = s.col_var[bj];
      if (v >= 0) x[v] += Rational(s.col_sign[bj]) * t.rhs(i);
    }
    return x;
  };

  if (unbounded_col >= 0) {
    sol.status = LpStatus::Unbounded;
    sol.x = extract_x();
    VectorXq ray = VectorXq::Zero(n);
    int v = s.col_var[unbounded_col];
    if (v >= 0) ray[v] += Rational(s.col_sign[unbounded_col]);
    for (Index i = 0; i < m; ++i) {
      if (t.dead(i)) continue;
      int bj = t.basic(i);
      if (bj < 0) continue;
      int bv = s.col_var[bj];
      if (bv >= 0) ray[bv] -= Rational(s.col_sign[bj]) * t.at(i, unbounded_col);
    }
    sol.ray = ray;
    sol.pivots = t.pivots_;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x = extract_x();
  sol.objective = prog.c.dot(sol.x);
  sol.dual = VectorXq(m);
  for (Index i = 0; i < m; ++i) sol.dual[i] = Rational(s.flip[i]) * (-obj.track[i]);
  sol.pivots = t.pivots_;
  return sol;
}

bool lp_verify(const LinProgram& prog, const LpSolution& sol, std::string* why) {
  const Index m = prog.a.rows();
  const Index n = prog.a.cols();
  auto sense_of = [&](Index i) { return prog.senses.empty() ? Sense::Eq : prog.senses[i]; };
  auto kind_of = [&](Index j) { return prog.vars.empty() ? VarKind::NonNeg : prog.vars[j]; };
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  auto primal_feasible = [&](const VectorXq& x) -> bool {
    if (x.size() != n) return false;
    for (Index j = 0; j < n; ++j)
      if (kind_of(j) == VarKind::NonNeg && x[j] < 0) return false;
    VectorXq ax = prog.a * x;
    for (Index i = 0; i < m; ++i) {
      switch (sense_of(i)) {
        case Sense::Eq:
          if (ax[i] != prog.b[i]) return false;
          break;
        case Sense::Le:
          if (ax[i] > prog.b[i]) return false;
          break;
        case Sense::Ge:
          if (ax[i] < prog.b[i]) return false;
          break;
      }
    }
    return true;
  };

  switch (sol.status) {
    case LpStatus::Optimal: {
      if (!primal_feasible(sol.x)) return fail("primal point infeasible");
      if (prog.c.dot(sol.x) != sol.objective) return fail("objective mismatch");
      if (sol.dual.size() != m) return fail("dual size");
      for (Index i = 0; i < m; ++i) {
        if (sense_of(i) == Sense::Le && sol.dual[i] > 0) return fail("dual sign (Le)");
        if (sense_of(i) == Sense::Ge && sol.dual[i] < 0) return fail("dual sign (Ge)");
      }
      VectorXq aty = prog.a.transpose() * sol.dual;
      for (Index j = 0; j < n; ++j) {
        if (kind_of(j) == VarKind::NonNeg) {
          if (aty[j] > prog.c[j]) return fail("dual infeasible (reduced cost)");
        } else {
          if (aty[j] != prog.c[j]) return fail("dual infeasible (free var)");
        }
      }
      if (prog.b.dot(sol.dual) != sol.objective) return fail("weak duality gap");
      return true;
    }
    case LpStatus::Infeasible: {
      if (sol.dual.size() != m) return fail("farkas size");
      for (Index i = 0; i < m; ++i) {
        if (sense_of(i) == Sense::Le && sol.dual[i] > 0) return fail("farkas sign (Le)");
        if (sense_of(i) == Sense::Ge && sol.dual[i] < 0) return fail("farkas sign (Ge)");
      }
      VectorXq aty = prog.a.transpose() * sol.dual;
      for (Index j = 0; j < n; ++j) {
        if (kind_of(j) == VarKind::NonNeg) {
          if (aty[j] > 0) return fail("farkas column sign");
        } else {
          if (aty[j] != 0) return fail("farkas free column");
        }
      }
      if (prog.b.dot(sol.dual) <= 0) return fail("farkas value not positive");
      return true;
    }
    case LpStatus::Unbounded: {
      if (!primal_feasible(sol.x)) return fail("unbounded: point infeasible");
      if (sol.ray.size() != n) return fail("ray size");
      for (Index j = 0; j < n; ++j)
        if (kind_of(j) == VarKind::NonNeg && sol.ray[j] < 0) return fail("ray sign");
      VectorXq ar = prog.a * sol.ray;
      for (Index i = 0; i < m; ++i) {
        switch (sense_of(i)) {
          case Sense::Eq:
            if (ar[i] != 0) return fail("ray row (Eq)");
            break;
          case Sense::Le:
            if (ar[i] > 0) return fail("ray row (Le)");
            break;
          case Sense::Ge:
            if (ar[i] < 0) return fail("ray row (Ge)");
            break;
        }
      }
      if (prog.c.dot(sol.ray) >= 0) return fail("ray not improving");
      return true;
    }
  }
  return fail("unknown status");
}

LinProgram lp_min_l1_program(const MatrixXq& w, const VectorXq& target) {
  if (w.rows() != target.size()) throw DimensionError("lp_min_l1: row mismatch");
  const Index k = w.cols();
  LinProgram prog;
  prog.a.resize(w.rows(), 2 * k);
  prog.a.leftCols(k) = w;
  prog.a.rightCols(k) = -w;
  prog.b = target;
  prog.c = VectorXq::Constant(2 * k, Rational(1));
  return prog;
}

LpSolution lp_min_l1(const MatrixXq& w, const VectorXq& target) {
  return lp_solve(lp_min_l1_program(w, target));
}

}  // namespace symtensor
