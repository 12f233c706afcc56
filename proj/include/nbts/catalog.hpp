#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbts/behavior.hpp"
#include "nbts/scenario.hpp"

namespace nbts::catalog {

enum class Family {
  DetIndef,          // a = mu*y + alpha, b = nu*x + beta (mod 2)
  PrLike,            // a + b = (x + gamma)(y + delta) + epsilon, weight 1/2
  ClassicalIndef,    // DetIndef without mu = nu = 1
  DetPar,            // a = alpha, b = beta
  LincorrPar,        // a + b = alpha*x + beta*y + delta, (alpha, beta) != (0, 0)
  DetSeq,            // a = alpha, b = beta*x + gamma
  LincorrSeq,        // a + b = y + alpha*x + beta
  ClassicalGeneral,  // union of the three ordered deterministic families
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);
const std::vector<Family>& all_families();

// Deterministic classical vertex with at least one party's output fixed.
struct ClassicalVertex {
  enum class Kind { BothConst, ABeforeB, BBeforeA };
  Kind kind = Kind::BothConst;
  std::size_t alpha = 0;             // BothConst, ABeforeB
  std::size_t beta = 0;              // BothConst, BBeforeA
  std::vector<std::size_t> alpha_y;  // BBeforeA: a = alpha_y[y]
  std::vector<std::size_t> beta_x;   // ABeforeB: b = beta_x[x]

  std::size_t a(std::size_t y) const { return kind == Kind::BBeforeA ? alpha_y.at(y) : alpha; }
  std::size_t b(std::size_t x) const { return kind == Kind::ABeforeB ? beta_x.at(x) : beta; }

  Behavior to_behavior(const Scenario& s) const;

  friend bool operator==(const ClassicalVertex&, const ClassicalVertex&) = default;
};

std::string_view kind_name(ClassicalVertex::Kind k);
ClassicalVertex::Kind parse_kind(std::string_view name);

/// Members of one family, deduplicated and in canonical (lexicographic table)
/// order. Binary families need (2,2,2,2); ClassicalGeneral takes any
/// two-party scenario.
std::vector<Behavior> generate(Family f, const Scenario& s);

/// Families whose union is the listed vertex set of a (regime, classical)
/// polytope at (2,2,2,2). Sequential B->A reuses the A->B families with the
/// parties swapped.
std::vector<Family> families_for(const TimingRegime& r, bool classical);

std::vector<Behavior> vertex_set(const TimingRegime& r, bool classical, const Scenario& s);

/// p'(a,b|x,y) = p(b,a|y,x).
Behavior swap_parties(const Behavior& b);

/// True iff b is deterministic at (2,2,2,2) with a = y + alpha and
/// b = x + beta (mod 2). Throws NotDeterministic otherwise-shaped input.
bool is_gyni_vertex(const Behavior& b);

/// The a = y, b = x behavior.
Behavior gyni_behavior();

}  // namespace nbts::catalog
