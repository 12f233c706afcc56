#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nbts/rational.hpp"
#include "nbts/scenario.hpp"

namespace nbts {

// Exact conditional distribution p(a|x). Construction enforces positivity,
// totality and per-input normalization.
class Behavior {
 public:
  Behavior(Scenario scenario, RationalVector table);

  /// Builds p(a|x) from a callback evaluated on every (outputs, inputs) pair.
  template <typename F>
  static Behavior from_function(const Scenario& scenario, F&& probability) {
    CoordinateIndex index(scenario);
    RationalVector table(index.size());
    for (std::size_t xi = 0; xi < scenario.input_tuple_count(); ++xi) {
      const auto inputs = index.input_tuple(xi);
      for (std::size_t ai = 0; ai < scenario.output_tuple_count(); ++ai) {
        table[index.flat(ai, xi)] = probability(index.output_tuple(ai), inputs);
      }
    }
    return Behavior(scenario, std::move(table));
  }

  static Behavior uniform(const Scenario& scenario);

  const Scenario& scenario() const noexcept { return scenario_; }
  const RationalVector& table() const noexcept { return table_; }
  const Rational& operator[](std::size_t flat) const { return table_.at(flat); }
  const Rational& at(const std::vector<std::size_t>& outputs,
                     const std::vector<std::size_t>& inputs) const;

  /// Two-party accessor p(a,b|x,y).
  const Rational& operator()(std::size_t a, std::size_t b, std::size_t x, std::size_t y) const;

  std::size_t zero_count() const;
  bool is_deterministic() const;

  friend bool operator==(const Behavior&, const Behavior&) = default;

 private:
  Scenario scenario_;
  RationalVector table_;
};

// p_i(a_i | x) for one party, indexed by (a_i, input tuple).
class Marginal {
 public:
  Marginal(std::size_t party, std::size_t outputs, std::size_t input_tuples, RationalVector values)
      : party_(party), outputs_(outputs), input_tuples_(input_tuples), values_(std::move(values)) {}

  std::size_t party() const noexcept { return party_; }
  std::size_t outputs() const noexcept { return outputs_; }
  std::size_t input_tuples() const noexcept { return input_tuples_; }
  const Rational& at(std::size_t output, std::size_t input_tuple) const {
    return values_.at(input_tuple * outputs_ + output);
  }

 private:
  std::size_t party_;
  std::size_t outputs_;
  std::size_t input_tuples_;
  RationalVector values_;
};

Marginal marginal(const Behavior& behavior, std::size_t party);

struct NbtsViolation {
  std::size_t party;
  std::size_t output;
  std::vector<std::size_t> inputs;
  std::vector<std::size_t> reference_inputs;
  Rational lhs;  // p_party(output | inputs)
  Rational rhs;  // p_party(output | reference_inputs)
};

struct NbtsReport {
  bool holds = true;
  std::vector<NbtsViolation> violations;
};

/// Exact check of the no-backwards-in-time-signalling equalities for `regime`.
/// Every violated equality is reported against the reference input tuple in
/// which the forbidden coordinates are set to 0.
NbtsReport check_nbts(const Behavior& behavior, const TimingRegime& regime);

struct ClassicalityViolation {
  std::size_t a, b, x, x_prime, y, y_prime;
  Rational lhs;  // p(a,b|x,y) + p(a,b|x',y')
  Rational rhs;  // p(a,b|x,y') + p(a,b|x',y)
};

struct ClassicalityReport {
  bool holds = true;
  std::vector<ClassicalityViolation> violations;
};

/// Checks p(a,b|x,y) + p(a,b|x',y') = p(a,b|x,y') + p(a,b|x',y) for all
/// a, b and x < x', y < y'. Two parties only.
ClassicalityReport check_classicality_equalities(const Behavior& behavior);

/// Exact convex combination. Weights must be non-negative and sum to one.
Behavior mix(std::span<const Behavior> behaviors, std::span<const Rational> weights);

}  // namespace nbts
