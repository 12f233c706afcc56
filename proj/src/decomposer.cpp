#include "nbts/decomposer.hpp"

#include "nbts/error.hpp"

namespace nbts::decomposer {

namespace {

struct Table {
  Scenario s;
  CoordinateIndex index;
  RationalVector p;

  Rational& at(std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
    return p[index.flat({a, b}, {x, y})];
  }
  bool nonzero(std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
    return sgn(at(a, b, x, y)) != 0;
  }
};

void check_preconditions(const Behavior& b) {
  if (b.scenario().party_count() != 2) {
    throw Error(ErrorKind::PreconditionFailed, "two-party behavior required");
  }
  const auto nbts = check_nbts(b, TimingRegime::indefinite());
  if (!nbts.holds) {
    throw Error(ErrorKind::PreconditionFailed,
                "nbts: " + std::to_string(nbts.violations.size()) + " indefinite-timing equalities violated");
  }
  const auto cl = check_classicality_equalities(b);
  if (!cl.holds) {
    throw Error(ErrorKind::PreconditionFailed,
                "classicality: " + std::to_string(cl.violations.size()) + " four-term equalities violated");
  }
}

}  // namespace

const char* case_name(PeelCase c) {
  switch (c) {
    case PeelCase::I: return "i";
    case PeelCase::II: return "ii";
    case PeelCase::III: return "iii";
  }
  return "?";
}

ConvexDecomposition decompose(const Behavior& behavior) {
  check_preconditions(behavior);
  const Scenario& s = behavior.scenario();
  const std::size_t d0 = s.outputs()[0], d1 = s.outputs()[1];
  const std::size_t m0 = s.inputs()[0], m1 = s.inputs()[1];
  const std::size_t max_terms = d0 * d1 * m0 * m1;

  Table r{s, CoordinateIndex(s), behavior.table()};
  ConvexDecomposition out;
  Rational remaining = 1;  // product of (1 - eps) so far

  while (true) {
    if (out.terms.size() >= max_terms) {
      throw Error(ErrorKind::InternalContradiction, "term bound exceeded");
    }
    // smallest nonzero entry, ties to the lexicographically smallest (x,y,a,b)
    bool found = false;
    PeelStep step;
    for (std::size_t x = 0; x < m0; ++x)
      for (std::size_t y = 0; y < m1; ++y)
        for (std::size_t a = 0; a < d0; ++a)
          for (std::size_t b = 0; b < d1; ++b) {
            const Rational& v = r.at(a, b, x, y);
            if (sgn(v) == 0) continue;
            if (!found || v < step.epsilon) {
              found = true;
              step.epsilon = v;
              step.a = a, step.b = b, step.x = x, step.y = y;
            }
          }
    if (!found) throw Error(ErrorKind::InternalContradiction, "remainder has no support");

    const std::size_t as = step.a, bs = step.b;
    bool x_gap = false, y_gap = false;
    for (std::size_t x = 0; x < m0; ++x)
      if (x != step.x && !r.nonzero(as, bs, x, step.y)) x_gap = true;
    for (std::size_t y = 0; y < m1; ++y)
      if (y != step.y && !r.nonzero(as, bs, step.x, y)) y_gap = true;

    ClassicalVertex v;
    if (!x_gap && !y_gap) {
      step.peel_case = PeelCase::I;
      v.kind = ClassicalVertex::Kind::BothConst;
      v.alpha = as;
      v.beta = bs;
    } else if (!x_gap) {
      step.peel_case = PeelCase::II;
      v.kind = ClassicalVertex::Kind::BBeforeA;
      v.beta = bs;
      v.alpha_y.resize(m1);
      for (std::size_t y = 0; y < m1; ++y) {
        if (y == step.y) {
          v.alpha_y[y] = as;  // keeps the peeled entry on the vertex support
          continue;
        }
        std::size_t a = 0;
        for (; a < d0; ++a) {
          bool ok = true;
          for (std::size_t x = 0; x < m0 && ok; ++x) ok = r.nonzero(a, bs, x, y);
          if (ok) break;
        }
        if (a == d0) throw Error(ErrorKind::InternalContradiction, "case ii: no valid a_y");
        v.alpha_y[y] = a;
      }
    } else if (!y_gap) {
      step.peel_case = PeelCase::III;
      v.kind = ClassicalVertex::Kind::ABeforeB;
      v.alpha = as;
      v.beta_x.resize(m0);
      for (std::size_t x = 0; x < m0; ++x) {
        if (x == step.x) {
          v.beta_x[x] = bs;
          continue;
        }
        std::size_t b = 0;
        for (; b < d1; ++b) {
          bool ok = true;
          for (std::size_t y = 0; y < m1 && ok; ++y) ok = r.nonzero(as, b, x, y);
          if (ok) break;
        }
        if (b == d1) throw Error(ErrorKind::InternalContradiction, "case iii: no valid b_x");
        v.beta_x[x] = b;
      }
    } else {
      throw Error(ErrorKind::InternalContradiction, "case iv reached");
    }
    step.vertex = v;
    step.zero_count = 0;
    for (const auto& e : r.p) step.zero_count += sgn(e) == 0;
    out.trace.push_back(step);

    const Rational eps = step.epsilon;
    out.terms.push_back({eps * remaining, v});
    if (eps == 1) {
      // the remainder must be exactly this vertex
      if (v.to_behavior(s).table() != r.p) {
        throw Error(ErrorKind::InternalContradiction, "final remainder is not the selected vertex");
      }
      break;
    }
    const Rational scale = 1 / (1 - eps);
    for (std::size_t x = 0; x < m0; ++x)
      for (std::size_t y = 0; y < m1; ++y) {
        Rational& e = r.at(v.a(y), v.b(x), x, y);
        e -= eps;
        if (sgn(e) < 0) throw Error(ErrorKind::InternalContradiction, "peel made an entry negative");
      }
    for (auto& e : r.p)
      if (sgn(e) != 0) e *= scale;
    remaining *= 1 - eps;
  }
  return out;
}

Behavior recompose(const ConvexDecomposition& d, const Scenario& s) {
  if (d.terms.empty()) throw Error(ErrorKind::WeightError, "empty decomposition");
  RationalVector table(s.coordinate_count());
  Rational total = 0;
  const CoordinateIndex index(s);
  for (const auto& t : d.terms) {
    if (sgn(t.weight) <= 0) throw Error(ErrorKind::WeightError, "non-positive weight");
    total += t.weight;
    Behavior v = Behavior::uniform(s);
    try {
      v = t.vertex.to_behavior(s);
    } catch (const Error& e) {
      throw Error(ErrorKind::ScenarioMismatch, "term vertex does not fit " + s.to_string() + ": " + e.detail());
    }
    for (std::size_t i = 0; i < table.size(); ++i)
      if (sgn(v[i]) != 0) table[i] += t.weight * v[i];
  }
  if (total != 1) throw Error(ErrorKind::WeightError, "weights sum to " + to_string(total));
  return Behavior(s, std::move(table));
}

}  // namespace nbts::decomposer
