#pragma once

#include <cstddef>
#include <vector>

#include "nbts/behavior.hpp"
#include "nbts/catalog.hpp"

namespace nbts::decomposer {

using catalog::ClassicalVertex;

struct Term {
  Rational weight;
  ClassicalVertex vertex;
};

enum class PeelCase { I, II, III };

const char* case_name(PeelCase c);

struct PeelStep {
  std::size_t a = 0, b = 0, x = 0, y = 0;  // location of the smallest nonzero entry
  Rational epsilon;
  PeelCase peel_case = PeelCase::I;
  ClassicalVertex vertex;
  std::size_t zero_count = 0;  // zeros in the remainder at step start
};

struct ConvexDecomposition {
  std::vector<Term> terms;
  std::vector<PeelStep> trace;
};

/// Peels the input into ordered classical vertices. Requires a two-party
/// behavior satisfying indefinite-timing NBTS and the four-term classicality
/// equalities; both are checked first (PreconditionFailed otherwise).
ConvexDecomposition decompose(const Behavior& b);

/// Weighted sum of the term tables. Throws WeightError if weights are not a
/// probability vector.
Behavior recompose(const ConvexDecomposition& d, const Scenario& s);

}  // namespace nbts::decomposer
