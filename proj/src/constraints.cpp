#include "nbts/constraints.hpp"

#include "nbts/error.hpp"
#include "nbts/linalg.hpp"

namespace nbts::constraints {

Rational LinearConstraint::evaluate(const RationalVector& point) const {
  Rational s = 0;
  for (const auto& [i, c] : coeffs) {
    if (i >= point.size()) throw Error(ErrorKind::DimensionMismatch, "constraint index beyond point");
    s += c * point[i];
  }
  return s;
}

bool LinearConstraint::satisfied_by(const RationalVector& point) const {
  const Rational lhs = evaluate(point);
  return relation == Relation::Eq ? lhs == rhs : lhs >= rhs;
}

HPolytope::HPolytope(std::size_t ambient_dim, std::vector<LinearConstraint> equalities,
                     std::vector<LinearConstraint> inequalities)
    : ambient_dim_(ambient_dim),
      equalities_(std::move(equalities)),
      inequalities_(std::move(inequalities)) {
  auto validate = [&](const std::vector<LinearConstraint>& list, Relation rel) {
    for (const auto& c : list) {
      if (c.relation != rel) throw Error(ErrorKind::InvalidArgument, "constraint in wrong list");
      for (const auto& [i, v] : c.coeffs) {
        if (i >= ambient_dim_) {
          throw Error(ErrorKind::DimensionMismatch,
                      "coefficient index " + std::to_string(i) + " >= ambient dimension");
        }
      }
    }
  };
  validate(equalities_, Relation::Eq);
  validate(inequalities_, Relation::Geq);
}

bool HPolytope::contains(const RationalVector& point) const {
  if (point.size() != ambient_dim_) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  for (const auto& c : equalities_)
    if (!c.satisfied_by(point)) return false;
  for (const auto& c : inequalities_)
    if (!c.satisfied_by(point)) return false;
  return true;
}

namespace {

void require_two_parties(const Scenario& s) {
  if (s.party_count() != 2) {
    throw Error(ErrorKind::WrongPartyCount,
                "classicality constraints are defined for 2 parties, got " +
                    std::to_string(s.party_count()));
  }
}

void add_coeff(LinearConstraint& c, std::size_t index, const Rational& value) {
  Rational& slot = c.coeffs[index];
  slot += value;
  if (sgn(slot) == 0) c.coeffs.erase(index);
}

// p(a,b|x,y) - p(a,b|x',y') = 0 for every (a,b) where (x',y') = reference(x,y).
template <typename Reference>
std::vector<LinearConstraint> pinned_to_reference(const Scenario& s, Reference reference) {
  const CoordinateIndex index(s);
  std::vector<LinearConstraint> out;
  for (std::size_t xi = 0; xi < s.input_tuple_count(); ++xi) {
    const auto inputs = index.input_tuple(xi);
    const auto ref = reference(inputs);
    if (ref == inputs) continue;
    const std::size_t ri = index.input_tuple_index(ref);
    for (std::size_t ai = 0; ai < s.output_tuple_count(); ++ai) {
      LinearConstraint c;
      add_coeff(c, index.flat(ai, xi), 1);
      add_coeff(c, index.flat(ai, ri), -1);
      c.rhs = 0;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace

std::vector<LinearConstraint> normalization_constraints(const Scenario& s) {
  const CoordinateIndex index(s);
  std::vector<LinearConstraint> out;
  for (std::size_t xi = 0; xi < s.input_tuple_count(); ++xi) {
    LinearConstraint c;
    for (std::size_t ai = 0; ai < s.output_tuple_count(); ++ai) c.coeffs[index.flat(ai, xi)] = 1;
    c.rhs = 1;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LinearConstraint> nbts_constraints(const Scenario& s, const TimingRegime& r) {
  const CoordinateIndex index(s);
  std::vector<LinearConstraint> out;
  for (std::size_t party = 0; party < s.party_count(); ++party) {
    const auto forbidden = r.forbidden_inputs(party, s.party_count());
    for (std::size_t xi = 0; xi < s.input_tuple_count(); ++xi) {
      const auto inputs = index.input_tuple(xi);
      auto ref = inputs;
      for (std::size_t j = 0; j < ref.size(); ++j)
        if (forbidden[j]) ref[j] = 0;
      if (ref == inputs) continue;
      const std::size_t ri = index.input_tuple_index(ref);
      for (std::size_t a = 0; a < s.outputs()[party]; ++a) {
        LinearConstraint c;
        for (std::size_t ai = 0; ai < s.output_tuple_count(); ++ai) {
          if (index.output_tuple(ai)[party] != a) continue;
          add_coeff(c, index.flat(ai, xi), 1);
          add_coeff(c, index.flat(ai, ri), -1);
        }
        c.rhs = 0;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

std::vector<LinearConstraint> classicality_constraints(const Scenario& s) {
  require_two_parties(s);
  const CoordinateIndex index(s);
  const auto& d = s.outputs();
  const auto& m = s.inputs();
  std::vector<LinearConstraint> out;
  for (std::size_t a = 0; a < d[0]; ++a)
    for (std::size_t b = 0; b < d[1]; ++b)
      for (std::size_t x = 0; x < m[0]; ++x)
        for (std::size_t xp = x + 1; xp < m[0]; ++xp)
          for (std::size_t y = 0; y < m[1]; ++y)
            for (std::size_t yp = y + 1; yp < m[1]; ++yp) {
              LinearConstraint c;
              add_coeff(c, index.flat({a, b}, {x, y}), 1);
              add_coeff(c, index.flat({a, b}, {xp, yp}), 1);
              add_coeff(c, index.flat({a, b}, {x, yp}), -1);
              add_coeff(c, index.flat({a, b}, {xp, y}), -1);
              c.rhs = 0;
              out.push_back(std::move(c));
            }
  return out;
}

std::vector<LinearConstraint> classicality_constraints(const Scenario& s, const TimingRegime& r) {
  require_two_parties(s);
  if (r.is_indefinite()) return classicality_constraints(s);
  if (r.is_parallel()) {
    return pinned_to_reference(s, [](const std::vector<std::size_t>& in) {
      return std::vector<std::size_t>(in.size(), 0);
    });
  }
  const auto& order = r.order();
  if (order.size() != 2) throw Error(ErrorKind::InvalidArgument, "sequential order needs 2 parties");
  const std::size_t later = order[1];
  return pinned_to_reference(s, [later](std::vector<std::size_t> in) {
    in[later] = 0;
    return in;
  });
}

std::size_t constraint_rank(const std::vector<LinearConstraint>& rows, std::size_t ambient_dim) {
  linalg::Matrix m(rows.size(), ambient_dim + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [i, v] : rows[r].coeffs) {
      if (i >= ambient_dim) throw Error(ErrorKind::DimensionMismatch, "constraint index");
      m(r, i) = v;
    }
    m(r, ambient_dim) = rows[r].rhs;
  }
  return linalg::rank(m);
}

std::size_t count_independent_classicality(const Scenario& s) {
  require_two_parties(s);
  auto base = normalization_constraints(s);
  const auto nbts = nbts_constraints(s, TimingRegime::indefinite());
  base.insert(base.end(), nbts.begin(), nbts.end());
  auto full = base;
  const auto classical = classicality_constraints(s);
  full.insert(full.end(), classical.begin(), classical.end());
  const std::size_t dim = s.coordinate_count();
  return constraint_rank(full, dim) - constraint_rank(base, dim);
}

HPolytope build_polytope(const Scenario& s, const TimingRegime& r, bool classical) {
  if (classical) require_two_parties(s);
  const std::size_t dim = s.coordinate_count();
  auto eq = normalization_constraints(s);
  const auto nbts = nbts_constraints(s, r);
  eq.insert(eq.end(), nbts.begin(), nbts.end());
  if (classical) {
    const auto extra = classicality_constraints(s, r);
    eq.insert(eq.end(), extra.begin(), extra.end());
  }
  std::vector<LinearConstraint> geq;
  geq.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    LinearConstraint c;
    c.coeffs[i] = 1;
    c.rhs = 0;
    c.relation = Relation::Geq;
    geq.push_back(std::move(c));
  }
  return HPolytope(dim, std::move(eq), std::move(geq));
}

}  // namespace nbts::constraints
