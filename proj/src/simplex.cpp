#include "ytile/simplex.hpp"

#include <stdexcept>

namespace ytile {

LpSolution solve_packing_lp(const PackingLp& lp, std::uint64_t max_pivots) {
  const std::size_t n = lp.num_vars;
  const std::size_t m = lp.rows.size();
  if (lp.objective.size() != n || lp.rhs.size() != m) {
    throw std::invalid_argument("LP dimensions are inconsistent");
  }
  for (const auto& b : lp.rhs) {
    if (sgn(b) < 0) throw std::invalid_argument("LP right-hand sides must be nonnegative");
  }

  // Columns: n structural, m slack, then the right-hand side.
  const std::size_t width = n + m + 1;
  const std::size_t rhs_col = n + m;
  std::vector<std::vector<mpq_class>> t(m, std::vector<mpq_class>(width));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& [col, coef] : lp.rows[i]) {
      if (col >= n) throw std::invalid_argument("LP row references an unknown variable");
      t[i][col] += coef;
    }
    t[i][n + i] = 1;
    t[i][rhs_col] = lp.rhs[i];
    basis[i] = n + i;
  }
  std::vector<mpq_class> z(width);
  for (std::size_t j = 0; j < n; ++j) z[j] = -lp.objective[j];

  LpSolution sol;
  std::vector<std::size_t> support;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs_col; ++j) {
      if (sgn(z[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    mpq_class best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      mpq_class ratio = t[i][rhs_col] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::runtime_error("LP is unbounded");
    if (++sol.pivots > max_pivots) throw LpBudgetExceeded("LP pivot budget exhausted");

    auto& prow = t[leave];
    const mpq_class pivot = prow[enter];
    support.clear();
    for (std::size_t j = 0; j < width; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] /= pivot;
        support.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<mpq_class>& row) {
      if (sgn(row[enter]) == 0) return;
      const mpq_class factor = row[enter];
      for (std::size_t j : support) row[j] -= factor * prow[j];
    };
    for (std::size_t i = 0; i < m; ++i) {
      if (i != leave) eliminate(t[i]);
    }
    eliminate(z);
    basis[leave] = enter;
  }

  sol.optimum = z[rhs_col];
  sol.primal.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) sol.primal[basis[i]] = t[i][rhs_col];
  }
  sol.dual.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) sol.dual[i] = z[n + i];
  return sol;
}

}  // namespace ytile
