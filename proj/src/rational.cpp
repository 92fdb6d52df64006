#include "symtensor/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

namespace symtensor {

namespace {

bool valid_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  // trim surrounding spaces
  auto trim = [](std::string& s) {
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
  };
  trim(num);
  trim(den);
  if (!valid_integer_token(num) || !valid_integer_token(den))
    throw ParseError("not a rational: '" + text + "'");
  Integer n(num), d(den);
  if (d == 0) throw ParseError("zero denominator: '" + text + "'");
  return Rational(n, d);  // two-argument constructor canonicalizes
}

std::string format_rational(const Rational& value) {
  std::string n = numerator(value).str();
  if (denominator(value) == 1) return n;
  return n + "/" + denominator(value).str();
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Interval sqrt_interval(double radicand) {
  if (radicand < 0) {
    if (radicand < -1e-12) throw DegenerateInputError("sqrt of negative value");
    radicand = 0;
  }
  double r = std::sqrt(radicand);
  double slack = 4 * std::numeric_limits<double>::epsilon() * r + 1e-300;
  return {std::max(0.0, r - slack), r + slack};
}

Interval sqrt_interval(const Rational& radicand) {
  if (radicand < 0) throw DegenerateInputError("sqrt of negative rational");
  // mpq -> double is correctly rounded, so one extra ulp covers the conversion.
  double r = std::sqrt(to_double(radicand));
  double slack = 8 * std::numeric_limits<double>::epsilon() * r + 1e-300;
  return {std::max(0.0, r - slack), r + slack};
}

Index rational_rank(const MatrixXq& m, std::vector<Index>* independent_rows) {
  MatrixXq a = m;
  std::vector<Index> row_of(a.rows());
  for (Index i = 0; i < a.rows(); ++i) row_of[i] = i;
  Index rank = 0;
  if (independent_rows) independent_rows->clear();
  for (Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Index pivot = -1;
    for (Index r = rank; r < a.rows(); ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    a.row(pivot).swap(a.row(rank));
    std::swap(row_of[pivot], row_of[rank]);
    for (Index r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      Rational f = a(r, col) / a(rank, col);
      for (Index c = col; c < a.cols(); ++c) a(r, c) -= f * a(rank, c);
    }
    if (independent_rows) independent_rows->push_back(row_of[rank]);
    ++rank;
  }
  if (independent_rows) std::sort(independent_rows->begin(), independent_rows->end());
  return rank;
}

MatrixXq rational_inverse(const MatrixXq& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of non-square matrix");
  const Index n = m.rows();
  MatrixXq a = m;
  MatrixXq inv = MatrixXq::Identity(n, n);
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index r = col; r < n; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw DegenerateInputError("singular matrix");
    a.row(pivot).swap(a.row(col));
    inv.row(pivot).swap(inv.row(col));
    Rational p = a(col, col);
    for (Index c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (Index c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Definiteness rational_definiteness(const MatrixXq& m) {
  if (m.rows() != m.cols()) throw DimensionError("definiteness of non-square matrix");
  if (m != m.transpose()) throw DegenerateInputError("definiteness of non-symmetric matrix");
  const Index n = m.rows();
  MatrixXq a = m;
  bool strict = true;
  for (Index k = 0; k < n; ++k) {
    if (a(k, k) < 0) return Definiteness::Indefinite;
    if (a(k, k) == 0) {
      // PSD forces the whole pivot row to vanish
      for (Index j = k; j < n; ++j)
        if (a(k, j) != 0) return Definiteness::Indefinite;
      strict = false;
      continue;
    }
    for (Index r = k + 1; r < n; ++r) {
      if (a(r, k) == 0) continue;
      Rational f = a(r, k) / a(k, k);
      for (Index c = k; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return strict ? Definiteness::PositiveDefinite : Definiteness::PositiveSemidefinite;
}

VectorXq rational_solve(const MatrixXq& m, const VectorXq& rhs) {
  if (m.rows() != m.cols() || m.rows() != rhs.size())
    throw DimensionError("rational_solve shape mismatch");
  const Index n = m.rows();
  MatrixXq a(n, n + 1);
  a.leftCols(n) = m;
  a.col(n) = rhs;
  for (Index col = 0; col < n; ++col) {
    Index pivot = -1;
    for (Index r = col; r < n; ++r) {
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) throw DegenerateInputError("singular system");
    a.row(pivot).swap(a.row(col));
    Rational p = a(col, col);
    for (Index c = col; c <= n; ++c) a(col, c) /= p;
    for (Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (Index c = col; c <= n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return a.col(n);
}

std::string GaugeValue::str() const {
  if (exact_) return format_rational(value_);
  return "[" + format_double(iv_.lo) + ", " + format_double(iv_.hi) + "]";
}

}  // namespace symtensor
