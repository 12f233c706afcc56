#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "nbts/behavior.hpp"
#include "nbts/rational.hpp"
#include "nbts/scenario.hpp"

namespace nbts::constraints {

enum class Relation { Eq, Geq };

// Sparse exact constraint sum_i coeffs[i] * p_i (= | >=) rhs over flat coordinates.
struct LinearConstraint {
  std::map<std::size_t, Rational> coeffs;
  Rational rhs;
  Relation relation = Relation::Eq;

  Rational evaluate(const RationalVector& point) const;
  bool satisfied_by(const RationalVector& point) const;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

class HPolytope {
 public:
  HPolytope(std::size_t ambient_dim, std::vector<LinearConstraint> equalities,
            std::vector<LinearConstraint> inequalities);

  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  const std::vector<LinearConstraint>& equalities() const noexcept { return equalities_; }
  const std::vector<LinearConstraint>& inequalities() const noexcept { return inequalities_; }

  bool contains(const RationalVector& point) const;

 private:
  std::size_t ambient_dim_;
  std::vector<LinearConstraint> equalities_;
  std::vector<LinearConstraint> inequalities_;
};

/// One equality sum_a p(a|x) = 1 per input tuple.
std::vector<LinearConstraint> normalization_constraints(const Scenario& s);

/// Marginal-independence equalities for the regime. Each party's marginal at
/// an input tuple is equated with its marginal at the reference tuple whose
/// forbidden coordinates are zero. Redundancy is allowed.
std::vector<LinearConstraint> nbts_constraints(const Scenario& s, const TimingRegime& r);

/// All instances of p(a,b|x,y) + p(a,b|x',y') - p(a,b|x,y') - p(a,b|x',y) = 0
/// with x < x', y < y'. Scenarios with a single input on either side yield an
/// empty list.
std::vector<LinearConstraint> classicality_constraints(const Scenario& s);

/// Extra equalities that cut the classical polytope out of the regime's NBTS
/// polytope. Indefinite: the four-term equalities above. Parallel: p(a,b|x,y)
/// equals p(a,b|0,0). Sequential: the distribution ignores the later party's
/// input.
std::vector<LinearConstraint> classicality_constraints(const Scenario& s, const TimingRegime& r);

/// Rank of the four-term classicality equalities modulo normalization and
/// indefinite-timing NBTS, by exact elimination.
std::size_t count_independent_classicality(const Scenario& s);

/// Positivity inequalities for every coordinate, plus normalization, NBTS(r)
/// and (if classical) the regime's classicality equalities.
HPolytope build_polytope(const Scenario& s, const TimingRegime& r, bool classical);

/// Exact rank of a set of constraints, each read as the row [coeffs | rhs].
std::size_t constraint_rank(const std::vector<LinearConstraint>& rows, std::size_t ambient_dim);

}  // namespace nbts::constraints
