#include "symtensor/body.hpp"

#include <algorithm>

namespace symtensor {

namespace {

// C(n, k) clamped at cap+1 so budget checks cannot overflow
unsigned long long binomial_capped(unsigned long long n, unsigned long long k,
                                   unsigned long long cap) {
  if (k > n) return 0;
  unsigned long long r = 1;
  for (unsigned long long i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace

std::vector<VectorXq> facet_enumeration(const std::vector<VectorXq>& gens_in, Index dim) {
  auto gens = canonicalize_pointset(gens_in);
  const Index m = static_cast<Index>(gens.size());
  if (m == 0) throw DegenerateInputError("facet_enumeration: empty generator set");
  for (const auto& g : gens)
    if (g.size() != dim) throw DimensionError("facet_enumeration: generator size vs dim");
  if (dim > 12) throw BudgetError("facet_enumeration: dimension above 12");
  constexpr unsigned long long kWorkBudget = 2'000'000;
  if (binomial_capped(2 * static_cast<unsigned long long>(m),
                      static_cast<unsigned long long>(dim), kWorkBudget) > kWorkBudget)
    throw BudgetError("facet_enumeration: too many vertex subsets");

  auto signed_gen = [&](Index i) -> VectorXq {
    return i < m ? gens[i] : VectorXq(-gens[i - m]);
  };

  // d-subsets of the 2m signed vertices; one endpoint of each facet pair has a
  // positive representative among its vertices, so pin c[0] < m
  std::vector<Index> c(dim);
  for (Index i = 0; i < dim; ++i) c[i] = i;
  std::vector<VectorXq> normals;

  auto advance = [&]() -> bool {
    Index i = dim - 1;
    while (i >= 0 && c[i] == 2 * m - (dim - i)) --i;
    if (i < 0) return false;
    if (i == 0 && c[0] + 1 >= m) return false;  // first index must stay positive
    ++c[i];
    for (Index j = i + 1; j < dim; ++j) c[j] = c[j - 1] + 1;
    return true;
  };

  if (2 * m < dim) throw DegenerateInputError("facet_enumeration: fewer vertices than dim");

  do {
    // antipodal pair in the subset makes the system singular; skip early
    bool antipodal = false;
    for (Index i = 0; i < dim && !antipodal; ++i)
      for (Index j = i + 1; j < dim; ++j)
        if (c[j] == c[i] + m) {
          antipodal = true;
          break;
        }
    if (antipodal) continue;

    MatrixXq v(dim, dim);
    for (Index i = 0; i < dim; ++i) v.row(i) = signed_gen(c[i]).transpose();
    VectorXq a;
    try {
      a = rational_solve(v, VectorXq::Constant(dim, Rational(1)));
    } catch (const DegenerateInputError&) {
      continue;
    }
    bool valid = true;
    for (Index g = 0; g < m && valid; ++g) {
      Rational dot = gens[g].dot(a);
      if (dot > 1 || dot < -1) valid = false;
    }
    if (valid) normals.push_back(antipodal_rep(a));
  } while (advance());

  normals = canonicalize_pointset(std::move(normals));
  if (normals.empty()) throw DegenerateInputError("facet_enumeration: no supporting facets");
  return normals;
}

}  // namespace symtensor
