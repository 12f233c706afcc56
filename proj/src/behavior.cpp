#include "nbts/behavior.hpp"

#include "nbts/error.hpp"

namespace nbts {

Behavior::Behavior(Scenario scenario, RationalVector table)
    : scenario_(std::move(scenario)), table_(std::move(table)) {
  if (table_.size() != scenario_.coordinate_count()) {
    throw Error(ErrorKind::InvalidBehavior,
                "table has " + std::to_string(table_.size()) + " entries, scenario needs " +
                    std::to_string(scenario_.coordinate_count()));
  }
  const std::size_t outs = scenario_.output_tuple_count();
  for (std::size_t xi = 0; xi < scenario_.input_tuple_count(); ++xi) {
    Rational sum = 0;
    for (std::size_t ai = 0; ai < outs; ++ai) {
      const Rational& p = table_[xi * outs + ai];
      if (sgn(p) < 0) throw Error(ErrorKind::InvalidBehavior, "negative probability " + p.get_str());
      sum += p;
    }
    if (sum != 1) {
      throw Error(ErrorKind::InvalidBehavior,
                  "input tuple " + std::to_string(xi) + " sums to " + sum.get_str());
    }
  }
}

Behavior Behavior::uniform(const Scenario& scenario) {
  const Rational value(1, scenario.output_tuple_count());
  return Behavior(scenario, RationalVector(scenario.coordinate_count(), value));
}

const Rational& Behavior::at(const std::vector<std::size_t>& outputs,
                             const std::vector<std::size_t>& inputs) const {
  return table_[CoordinateIndex(scenario_).flat(outputs, inputs)];
}

const Rational& Behavior::operator()(std::size_t a, std::size_t b, std::size_t x,
                                     std::size_t y) const {
  if (scenario_.party_count() != 2) throw Error(ErrorKind::WrongPartyCount, "expected 2 parties");
  const auto& d = scenario_.outputs();
  const auto& m = scenario_.inputs();
  if (a >= d[0] || b >= d[1] || x >= m[0] || y >= m[1]) {
    throw Error(ErrorKind::IndexOutOfRange, "p(a,b|x,y) index out of range");
  }
  return table_[(x * m[1] + y) * d[0] * d[1] + a * d[1] + b];
}

std::size_t Behavior::zero_count() const {
  std::size_t zeros = 0;
  for (const auto& p : table_) zeros += (sgn(p) == 0);
  return zeros;
}

bool Behavior::is_deterministic() const {
  for (const auto& p : table_) {
    if (p != 0 && p != 1) return false;
  }
  return true;
}

Marginal marginal(const Behavior& behavior, std::size_t party) {
  const Scenario& s = behavior.scenario();
  if (party >= s.party_count()) throw Error(ErrorKind::IndexOutOfRange, "party index out of range");
  const CoordinateIndex index(s);
  const std::size_t d = s.outputs()[party];
  RationalVector values(d * s.input_tuple_count());
  for (std::size_t xi = 0; xi < s.input_tuple_count(); ++xi) {
    for (std::size_t ai = 0; ai < s.output_tuple_count(); ++ai) {
      const std::size_t own = index.output_tuple(ai)[party];
      values[xi * d + own] += behavior[index.flat(ai, xi)];
    }
  }
  return Marginal(party, d, s.input_tuple_count(), std::move(values));
}

NbtsReport check_nbts(const Behavior& behavior, const TimingRegime& regime) {
  const Scenario& s = behavior.scenario();
  const CoordinateIndex index(s);
  NbtsReport report;
  for (std::size_t party = 0; party < s.party_count(); ++party) {
    const auto forbidden = regime.forbidden_inputs(party, s.party_count());
    const Marginal m = marginal(behavior, party);
    for (std::size_t xi = 0; xi < s.input_tuple_count(); ++xi) {
      const auto inputs = index.input_tuple(xi);
      auto reference = inputs;
      for (std::size_t j = 0; j < reference.size(); ++j) {
        if (forbidden[j]) reference[j] = 0;
      }
      if (reference == inputs) continue;
      const std::size_t ri = index.input_tuple_index(reference);
      for (std::size_t a = 0; a < m.outputs(); ++a) {
        if (m.at(a, xi) != m.at(a, ri)) {
          report.holds = false;
          report.violations.push_back({party, a, inputs, reference, m.at(a, xi), m.at(a, ri)});
        }
      }
    }
  }
  return report;
}

ClassicalityReport check_classicality_equalities(const Behavior& behavior) {
  const Scenario& s = behavior.scenario();
  if (s.party_count() != 2) {
    throw Error(ErrorKind::WrongPartyCount, "classicality equalities need exactly 2 parties");
  }
  const auto& d = s.outputs();
  const auto& m = s.inputs();
  ClassicalityReport report;
  for (std::size_t a = 0; a < d[0]; ++a)
    for (std::size_t b = 0; b < d[1]; ++b)
      for (std::size_t x = 0; x < m[0]; ++x)
        for (std::size_t xp = x + 1; xp < m[0]; ++xp)
          for (std::size_t y = 0; y < m[1]; ++y)
            for (std::size_t yp = y + 1; yp < m[1]; ++yp) {
              Rational lhs = behavior(a, b, x, y) + behavior(a, b, xp, yp);
              Rational rhs = behavior(a, b, x, yp) + behavior(a, b, xp, y);
              if (lhs != rhs) {
                report.holds = false;
                report.violations.push_back({a, b, x, xp, y, yp, std::move(lhs), std::move(rhs)});
              }
            }
  return report;
}

Behavior mix(std::span<const Behavior> behaviors, std::span<const Rational> weights) {
  if (behaviors.empty() || behaviors.size() != weights.size()) {
    throw Error(ErrorKind::WeightError, "need one weight per behavior and at least one behavior");
  }
  Rational total = 0;
  for (const auto& w : weights) {
    if (sgn(w) < 0) throw Error(ErrorKind::WeightError, "negative weight " + w.get_str());
    total += w;
  }
  if (total != 1) throw Error(ErrorKind::WeightError, "weights sum to " + total.get_str());
  const Scenario& s = behaviors.front().scenario();
  RationalVector table(s.coordinate_count());
  for (std::size_t k = 0; k < behaviors.size(); ++k) {
    if (behaviors[k].scenario() != s) throw Error(ErrorKind::ScenarioMismatch, "mixed scenarios");
    if (sgn(weights[k]) == 0) continue;
    for (std::size_t i = 0; i < table.size(); ++i) table[i] += weights[k] * behaviors[k][i];
  }
  return Behavior(s, std::move(table));
}

}  // namespace nbts
