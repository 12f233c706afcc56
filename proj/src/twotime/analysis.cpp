#include "nbts/twotime/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "nbts/error.hpp"
#include "nbts/linalg.hpp"

namespace nbts::twotime {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::size_t wire_dim(const LabeledTensor& t, const std::string& wire) {
  for (const auto& i : t.indices())
    if (i.wire == wire) return i.dim;
  throw Error(ErrorKind::WrongWireSet, "missing wire " + wire);
}

// eta must carry exactly: for each raised wire (ket up, bra down), for each
// lowered wire (ket down, bra up).
void require_wires(const LabeledTensor& eta, const std::vector<std::string>& raised,
                   const std::vector<std::string>& lowered) {
  if (eta.rank() != 2 * (raised.size() + lowered.size())) {
    throw Error(ErrorKind::WrongWireSet, "expected " + std::to_string(2 * (raised.size() + lowered.size())) +
                                             " indices, found " + std::to_string(eta.rank()));
  }
  auto need = [&](const std::string& w, Side s, Variance v) {
    if (eta.find(w, s, v) == npos) throw Error(ErrorKind::WrongWireSet, "missing index on wire " + w);
  };
  for (const auto& w : raised) {
    need(w, Side::Ket, Variance::Up);
    need(w, Side::Bra, Variance::Down);
  }
  for (const auto& w : lowered) {
    need(w, Side::Ket, Variance::Down);
    need(w, Side::Bra, Variance::Up);
  }
}

void forbid_wire(const LabeledTensor& eta, const std::string& w) {
  if (eta.wires().count(w)) throw Error(ErrorKind::WrongWireSet, "wire " + w + " is reserved for relabeling");
}

}  // namespace

std::vector<double> probability(const LabeledTensor& eta, const std::vector<const Measurement*>& measurements,
                                const std::vector<const LabeledTensor*>& channels, double tol) {
  if (measurements.size() != channels.size()) {
    throw Error(ErrorKind::InvalidArgument, "one channel per measurement required");
  }
  std::vector<LabeledTensor> partial{eta};
  LabeledTensor denom = eta;
  for (std::size_t party = 0; party < measurements.size(); ++party) {
    const auto& m = *measurements[party];
    const auto& ch = *channels[party];
    std::vector<LabeledTensor> process;
    for (const auto& e : m.elements) process.push_back(bullet(ch, e));
    std::vector<LabeledTensor> next;
    next.reserve(partial.size() * process.size());
    for (const auto& t : partial)
      for (const auto& p : process) next.push_back(bullet(p, t));
    partial = std::move(next);
    denom = bullet(bullet(ch, m.total()), denom);
  }
  const Complex d = denom.value();
  if (std::abs(d) <= tol) throw Error(ErrorKind::ZeroDenominator, "post-selection probability vanishes");
  std::vector<double> out;
  out.reserve(partial.size());
  for (const auto& t : partial) out.push_back((t.value() / d).real());
  return out;
}

WitnessReport nbts_witness_single(const LabeledTensor& eta, double tol) {
  require_wires(eta, {"A1"}, {"A3"});
  const std::size_t d1 = wire_dim(eta, "A1");
  const std::size_t d3 = wire_dim(eta, "A3");
  const Wire in{"A1", d1}, lab{"A2", d3};

  std::vector<Measurement> family;
  family.push_back(computational_measurement(in, lab, 0));
  for (std::size_t r = 0; r < d1; ++r)
    for (std::size_t s = r + 1; s < d1; ++s) {
      family.push_back(superposition_measurement(r, s, false, in, lab, 0));
      family.push_back(superposition_measurement(r, s, true, in, lab, 0));
    }
  family.push_back(discard_and_randomize(in, lab));

  std::vector<LabeledTensor> channels;
  const auto unitaries = unitary_family(d3);
  for (const auto& u : unitaries) channels.push_back(unitary_channel(u.u, lab, {"A3", d3}));

  WitnessReport rep;
  for (const auto& m : family) {
    const std::size_t outcomes = m.elements.size();
    std::vector<double> lo(outcomes, std::numeric_limits<double>::infinity());
    std::vector<double> hi(outcomes, -std::numeric_limits<double>::infinity());
    std::vector<std::size_t> lo_at(outcomes, 0), hi_at(outcomes, 0);
    for (std::size_t x = 0; x < channels.size(); ++x) {
      std::vector<double> p;
      try {
        p = probability(eta, {&m}, {&channels[x]}, tol);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroDenominator) throw;
        ++rep.skipped;
        continue;
      }
      ++rep.evaluated;
      for (std::size_t a = 0; a < outcomes; ++a) {
        if (p[a] < lo[a]) lo[a] = p[a], lo_at[a] = x;
        if (p[a] > hi[a]) hi[a] = p[a], hi_at[a] = x;
      }
    }
    for (std::size_t a = 0; a < outcomes; ++a) {
      if (hi[a] < lo[a]) continue;
      const double dev = hi[a] - lo[a];
      if (dev > rep.worst_deviation || rep.measurement.empty()) {
        rep.worst_deviation = dev;
        rep.measurement = m.name;
        rep.channel_x = unitaries[hi_at[a]].name;
        rep.channel_x_prime = unitaries[lo_at[a]].name;
        rep.outcome = a;
      }
    }
  }
  if (rep.evaluated == 0) throw Error(ErrorKind::ZeroDenominator, "every test combination has zero post-selection probability");
  rep.nbts = rep.worst_deviation <= tol;
  return rep;
}

std::string_view form_name(StructuralForm f) {
  switch (f) {
    case StructuralForm::ProductIdentitySingle: return "product_identity_single";
    case StructuralForm::ProductIdentityPair: return "product_identity_pair";
    case StructuralForm::SequentialBIdentity: return "sequential_B_identity";
  }
  return "unknown";
}

StructuralForm parse_form(std::string_view name) {
  for (auto f : {StructuralForm::ProductIdentitySingle, StructuralForm::ProductIdentityPair,
                 StructuralForm::SequentialBIdentity})
    if (form_name(f) == name) return f;
  throw Error(ErrorKind::InvalidArgument, "unknown structural form '" + std::string(name) + "'");
}

StructuralReport structural_form_check(const LabeledTensor& eta, StructuralForm form, double tol) {
  std::vector<std::string> sides;  // parties whose post-selection must be trivial
  if (form == StructuralForm::ProductIdentitySingle) {
    require_wires(eta, {"A1"}, {"A3"});
    sides = {"A"};
  } else {
    require_wires(eta, {"A1", "B1"}, {"A3", "B3"});
    sides = form == StructuralForm::ProductIdentityPair ? std::vector<std::string>{"A", "B"}
                                                        : std::vector<std::string>{"B"};
  }
  LabeledTensor t = eta, i = eta, extracted = eta;
  for (const auto& p : sides) {
    const std::string lab = p + "2", out = p + "3";
    forbid_wire(eta, lab);
    const std::size_t d = wire_dim(eta, out);
    t = bullet(throw_away_replace(lab, out, d, d), t);
    i = bullet(identity_channel(lab, out, d), i);
    extracted = bullet(identity_vector(out, d, Variance::Up), extracted);
    extracted *= Complex(1.0 / static_cast<double>(d));
  }
  StructuralReport rep;
  rep.residual = max_abs_diff(t, i);
  rep.matches = rep.residual <= tol;
  rep.extracted = std::move(extracted);
  return rep;
}

LinearityReport is_linear_two_time(const LabeledTensor& eta, double tol) {
  require_wires(eta, {"A1", "B1"}, {"A3", "B3"});
  forbid_wire(eta, "A2");
  forbid_wire(eta, "B2");
  const std::size_t da1 = wire_dim(eta, "A1"), da3 = wire_dim(eta, "A3");
  const std::size_t db1 = wire_dim(eta, "B1"), db3 = wire_dim(eta, "B3");

  LinearityReport rep;
  LabeledTensor full = bullet(identity_vector("A1", da1), eta);
  full = bullet(identity_vector("A3", da3, Variance::Up), full);
  full = bullet(identity_vector("B1", db1), full);
  full = bullet(identity_vector("B3", db3, Variance::Up), full);
  rep.residuals[0] = std::abs(full.value() - Complex(static_cast<double>(da3 * db3)));

  const LabeledTensor ia = identity_channel("A2", "A3", da3), ta = throw_away_replace("A2", "A3", da3, da3);
  const LabeledTensor ib = identity_channel("B2", "B3", db3), tb = throw_away_replace("B2", "B3", db3, db3);
  const LabeledTensor ta_full = throw_away_replace("A1", "A3", da1, da3);
  const LabeledTensor tb_full = throw_away_replace("B1", "B3", db1, db3);

  auto apply = [&](const LabeledTensor& a, const LabeledTensor& b) { return bullet(a, bullet(b, eta)); };
  rep.residuals[1] = max_abs_diff(apply(ia, tb_full), apply(ta, tb_full));
  rep.residuals[2] = max_abs_diff(apply(ta_full, ib), apply(ta_full, tb));
  const LabeledTensor lhs = apply(ia, ib);
  const LabeledTensor rhs = apply(ia, tb) + apply(ta, ib) - apply(ta, tb);
  rep.residuals[3] = max_abs_diff(lhs, rhs);
  rep.linear = std::all_of(rep.residuals.begin(), rep.residuals.end(), [&](double r) { return r <= tol; });
  return rep;
}

FloatBehavior behavior_table(const LabeledTensor& eta, const PartyStrategy& alice, const PartyStrategy& bob,
                             double tol) {
  require_wires(eta, {"A1", "B1"}, {"A3", "B3"});
  const std::size_t da = alice.measurement.elements.size(), db = bob.measurement.elements.size();
  const std::size_t ma = alice.channels.size(), mb = bob.channels.size();
  if (da == 0 || db == 0 || ma == 0 || mb == 0) throw Error(ErrorKind::InvalidArgument, "empty strategy");
  FloatBehavior out{Scenario::bipartite(da, db, ma, mb), {}, 0};
  const CoordinateIndex index(out.scenario);
  out.p.assign(index.size(), 0);

  // contract Alice's processes first; Bob's side then needs only small tensors
  for (std::size_t x = 0; x < ma; ++x) {
    std::vector<LabeledTensor> after_a;
    for (const auto& e : alice.measurement.elements) after_a.push_back(bullet(bullet(alice.channels[x], e), eta));
    const LabeledTensor after_total = bullet(bullet(alice.channels[x], alice.measurement.total()), eta);
    for (std::size_t y = 0; y < mb; ++y) {
      const LabeledTensor kt = bullet(bob.channels[y], bob.measurement.total());
      const Complex denom = bullet(kt, after_total).value();
      if (std::abs(denom) <= tol) throw Error(ErrorKind::ZeroDenominator, "post-selection probability vanishes");
      for (std::size_t b = 0; b < db; ++b) {
        const LabeledTensor kb = bullet(bob.channels[y], bob.measurement.elements[b]);
        for (std::size_t a = 0; a < da; ++a) {
          const Complex v = bullet(kb, after_a[a]).value() / denom;
          out.max_imag = std::max(out.max_imag, std::abs(v.imag()));
          out.p[index.flat({a, b}, {x, y})] = v.real();
        }
      }
    }
  }
  return out;
}

Rationalized rationalize(const std::vector<double>& p, const Scenario& s,
                         const std::vector<constraints::LinearConstraint>& equalities, long max_denominator,
                         double pin_tol) {
  const std::size_t n = s.coordinate_count();
  if (p.size() != n) throw Error(ErrorKind::DimensionMismatch, "behavior table length");
  RationalVector q(n);
  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (const auto& c : equalities) {
    RationalVector row(n);
    for (const auto& [j, v] : c.coeffs) row.at(j) = v;
    rows.push_back(std::move(row));
    rhs.push_back(c.rhs);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(p[i]) <= pin_tol) {
      RationalVector row(n);
      row[i] = 1;
      rows.push_back(std::move(row));
      rhs.push_back(0);
      continue;
    }
    q[i] = best_rational(p[i], max_denominator);
  }
  if (!rows.empty()) q = linalg::project_onto_affine(linalg::Matrix::from_rows(rows, n), rhs, q);
  Rationalized out{Behavior::uniform(s), 0};
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(q[i]) < 0) throw Error(ErrorKind::InvalidBehavior, "rationalized entry is negative");
    out.max_error = std::max(out.max_error, std::abs(q[i].get_d() - p[i]));
  }
  out.behavior = Behavior(s, std::move(q));
  return out;
}

double max_violation(const std::vector<double>& p, const std::vector<constraints::LinearConstraint>& equalities) {
  double worst = 0;
  for (const auto& c : equalities) {
    double lhs = 0;
    for (const auto& [i, v] : c.coeffs) {
      if (i >= p.size()) throw Error(ErrorKind::DimensionMismatch, "constraint index beyond table");
      lhs += v.get_d() * p[i];
    }
    worst = std::max(worst, std::abs(lhs - c.rhs.get_d()));
  }
  return worst;
}

ExtractedBehavior extract_behavior(const LabeledTensor& eta, const PartyStrategy& alice, const PartyStrategy& bob,
                                   double tol) {
  FloatBehavior raw = behavior_table(eta, alice, bob, tol);
  Rationalized r = rationalize(raw.p, raw.scenario, constraints::normalization_constraints(raw.scenario));
  return {std::move(raw), std::move(r)};
}

}  // namespace nbts::twotime
