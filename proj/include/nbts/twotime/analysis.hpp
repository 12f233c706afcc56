#pragma once

#include <array>
#include <string>
#include <vector>

#include "nbts/behavior.hpp"
#include "nbts/constraints.hpp"
#include "nbts/twotime/processes.hpp"

namespace nbts::twotime {

/// p(outcomes) = (chosen elements and channels . eta) / (summed elements and
/// channels . eta), one measurement and one channel per party. Outcome tuples
/// are row-major in party order. Throws ZeroDenominator when |denominator| <= tol.
std::vector<double> probability(const LabeledTensor& eta, const std::vector<const Measurement*>& measurements,
                                const std::vector<const LabeledTensor*>& channels, double tol = kDefaultTol);

struct WitnessReport {
  bool nbts = true;
  double worst_deviation = 0;
  std::string measurement;  // where the worst deviation was seen
  std::string channel_x;
  std::string channel_x_prime;
  std::size_t outcome = 0;
  std::size_t evaluated = 0;  // (measurement, channel) pairs with a usable denominator
  std::size_t skipped = 0;
};

/// Runs the single-party test family on eta over wires A1 (pre-selected) and
/// A3 (post-selected): destructive computational, (r,s)-superposition and
/// (r,s)-imaginary-superposition measurements with |0> re-preparation, plus
/// discard-and-randomize, each followed by every unitary of unitary_family.
WitnessReport nbts_witness_single(const LabeledTensor& eta, double tol = kDefaultTol);

enum class StructuralForm { ProductIdentitySingle, ProductIdentityPair, SequentialBIdentity };

std::string_view form_name(StructuralForm f);
StructuralForm parse_form(std::string_view name);

struct StructuralReport {
  bool matches = false;
  double residual = 0;
  LabeledTensor extracted;  // eta with the identity factors traced out and normalized away
};

/// Fixed-point test T . eta == I . eta on the post-selected wires of the form.
StructuralReport structural_form_check(const LabeledTensor& eta, StructuralForm form, double tol = kDefaultTol);

struct LinearityReport {
  bool linear = false;
  std::array<double, 4> residuals{};
};

/// Normalization plus the three channel identities characterizing linear
/// two-party states on wires A1, A3, B1, B3.
LinearityReport is_linear_two_time(const LabeledTensor& eta, double tol = kDefaultTol);

struct PartyStrategy {
  Measurement measurement;              // in -> lab wire (A1 -> A2 or B1 -> B2)
  std::vector<LabeledTensor> channels;  // lab wire -> out (A2 -> A3 or B2 -> B3), indexed by input
  std::vector<std::string> channel_names;
};

struct FloatBehavior {
  Scenario scenario;
  std::vector<double> p;  // coordinate layout of CoordinateIndex
  double max_imag = 0;
};

struct Rationalized {
  Behavior behavior;
  double max_error = 0;
};

/// Nearest rationals with bounded denominator, entries within pin_tol of zero
/// pinned to zero, then the exact orthogonal projection onto `equalities`
/// (and the pins). Throws InvalidBehavior if the projection leaves the simplex.
Rationalized rationalize(const std::vector<double>& p, const Scenario& s,
                         const std::vector<constraints::LinearConstraint>& equalities,
                         long max_denominator = 1000000, double pin_tol = kDefaultTol);

/// Largest |lhs - rhs| of the equality rows evaluated on a floating table.
double max_violation(const std::vector<double>& p, const std::vector<constraints::LinearConstraint>& equalities);

struct ExtractedBehavior {
  FloatBehavior raw;
  Rationalized rational;  // projected onto normalization only
};

/// p(a,b|x,y) for eta on A1, A3, B1, B3 under the two strategies.
ExtractedBehavior extract_behavior(const LabeledTensor& eta, const PartyStrategy& alice, const PartyStrategy& bob,
                                   double tol = kDefaultTol);

/// Raw table only.
FloatBehavior behavior_table(const LabeledTensor& eta, const PartyStrategy& alice, const PartyStrategy& bob,
                             double tol = kDefaultTol);

}  // namespace nbts::twotime
