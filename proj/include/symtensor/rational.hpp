#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace symtensor {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using MatrixXq = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Index = Eigen::Index;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& what) : Error("degenerate input: " + what) {}
};

class RepresentationError : public Error {
 public:
  explicit RepresentationError(const std::string& what)
      : Error("unsupported representation: " + what) {}
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error("budget exceeded: " + what) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& what) : Error("solver failure: " + what) {}
};

// Parses "p", "-p", or "p/q".  Always canonicalizes (lowest terms, positive
// denominator); the mpq string constructor would keep "3/9" as-is.
Rational parse_rational(const std::string& text);

// Lowest-terms rendering, "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

// Shortest round-trip decimal form for report output.
std::string format_double(double value);

// A closed interval certified to contain an exact value.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// Gauge evaluations are exact rationals on polytopal representations and
// certified intervals on ellipsoidal or solver-backed ones.
class GaugeValue {
 public:
  GaugeValue() : exact_(true), value_(0) {}
  static GaugeValue exact(Rational v) {
    GaugeValue g;
    g.exact_ = true;
    g.value_ = std::move(v);
    return g;
  }
  static GaugeValue interval(double lo, double hi) {
    GaugeValue g;
    g.exact_ = false;
    g.iv_ = {lo, hi};
    return g;
  }

  bool is_exact() const { return exact_; }
  const Rational& rational() const {
    if (!exact_) throw RepresentationError("gauge value is an interval, not exact");
    return value_;
  }
  double lo() const { return exact_ ? to_double(value_) : iv_.lo; }
  double hi() const { return exact_ ? to_double(value_) : iv_.hi; }
  double mid() const { return exact_ ? to_double(value_) : iv_.mid(); }
  std::string str() const;

 private:
  bool exact_;
  Rational value_;
  Interval iv_;
};

// sqrt of a nonnegative value with a small directed slop so the interval
// certifiably brackets the true root.
Interval sqrt_interval(double radicand);
Interval sqrt_interval(const Rational& radicand);

// Exact rank via fraction-free Gaussian elimination.  `independent_rows`, when
// given, receives indices of `rank` linearly independent rows (a spanning
// certificate recheckable by substitution).
Index rational_rank(const MatrixXq& m, std::vector<Index>* independent_rows = nullptr);

// Exact inverse; throws DegenerateInputError when singular.
MatrixXq rational_inverse(const MatrixXq& m);

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Indefinite };

// Exact definiteness of a symmetric rational matrix via fraction-free
// symmetric elimination.
Definiteness rational_definiteness(const MatrixXq& m);

// Solves m * x = rhs exactly; throws DegenerateInputError when singular.
VectorXq rational_solve(const MatrixXq& m, const VectorXq& rhs);

inline MatrixXd to_double_matrix(const MatrixXq& m) {
  MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

inline VectorXd to_double_vector(const VectorXq& v) {
  VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

}  // namespace symtensor
