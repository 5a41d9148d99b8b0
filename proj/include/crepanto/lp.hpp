#pragma once

#include <cstddef>
#include <vector>

#include "crepanto/exact.hpp"

namespace crepanto {

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<RationalVector> rows;
  std::vector<Relation> relations;
  RationalVector rhs;
  RationalVector objective;     // maximized; empty means pure feasibility
  std::vector<bool> free_vars;  // empty means all variables are nonnegative

  void add_row(RationalVector coeffs, Relation rel, Rational b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RationalVector x;
  RationalVector duals;  // one multiplier per row at the optimum
};

// Exact two-phase simplex. Dantzig pricing with a Bland fallback on degenerate streaks.
LpResult solve_lp(const LinearProgram& lp);

bool is_feasible(const LinearProgram& lp);

}  // namespace crepanto
