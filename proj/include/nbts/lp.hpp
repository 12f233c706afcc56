#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "nbts/constraints.hpp"
#include "nbts/linalg.hpp"
#include "nbts/rational.hpp"

namespace nbts::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  RationalVector x;    // optimal point (Optimal only)
  Rational objective;  // optimal value (Optimal only)
};

/// Exact two-phase primal simplex with Bland's rule:
/// maximize c.x subject to A x = b, x >= 0.
Result solve_standard(const linalg::Matrix& a, const RationalVector& b, const RationalVector& c);

// maximize objective.x subject to mixed Eq/Geq rows; variables are free unless
// flagged non-negative.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<constraints::LinearConstraint> rows;
  std::vector<bool> nonnegative;  // empty means all free
  std::map<std::size_t, Rational> objective;
};

Result solve(const Problem& problem);

}  // namespace nbts::lp
