#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace ytile {

/// max c·x subject to A x <= b, x >= 0, with b >= 0 so that the origin is feasible.
/// Rows are stored sparsely as (column, coefficient) pairs.
struct PackingLp {
  std::size_t num_vars = 0;
  std::vector<mpq_class> objective;
  std::vector<std::vector<std::pair<std::size_t, mpq_class>>> rows;
  std::vector<mpq_class> rhs;
};

struct LpSolution {
  mpq_class optimum;
  std::vector<mpq_class> primal;  // one per variable
  std::vector<mpq_class> dual;    // one per row; certifies optimality via weak duality
  std::uint64_t pivots = 0;
};

class LpBudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dense tableau simplex in exact rationals with Bland's rule (terminates under degeneracy).
/// Throws LpBudgetExceeded after `max_pivots` pivots.
LpSolution solve_packing_lp(const PackingLp& lp, std::uint64_t max_pivots = 1'000'000);

}  // namespace ytile
