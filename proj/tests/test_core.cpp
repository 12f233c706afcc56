#include <doctest.h>

#include "nbts/behavior.hpp"
#include "nbts/catalog.hpp"
#include "nbts/constraints.hpp"
#include "nbts/error.hpp"
#include "nbts/linalg.hpp"
#include "nbts/rational.hpp"
#include "nbts/scenario.hpp"

using namespace nbts;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

const Scenario k2222 = Scenario::bipartite(2, 2, 2, 2);

Behavior pr_box() {
  return Behavior::from_function(k2222, [](const auto& a, const auto& x) {
    return ((a[0] ^ a[1]) == (x[0] & x[1])) ? Rational(1, 2) : Rational(0);
  });
}

}  // namespace

TEST_CASE("rational parsing is exact and canonical") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(kind_of([] { parse_rational("1/-2"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_rational("0.5"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_rational(""); }) == ErrorKind::ParseError);
}

TEST_CASE("best rational approximation") {
  CHECK(best_rational(0.3333333333333, 1000) == Rational(1, 3));
  CHECK(best_rational(3.14159265358979, 120) == Rational(355, 113));
  CHECK(best_rational(-0.25, 10) == Rational(-1, 4));
}

TEST_CASE("coordinate index round trip") {
  const Scenario s = Scenario::bipartite(3, 2, 2, 3);
  const CoordinateIndex index(s);
  CHECK(index.size() == 36);
  for (std::size_t f = 0; f < index.size(); ++f) {
    const std::size_t ai = f % s.output_tuple_count(), xi = f / s.output_tuple_count();
    CHECK(index.flat(index.output_tuple(ai), index.input_tuple(xi)) == f);
  }
  // inputs outermost, last party's output fastest
  CHECK(index.flat({0, 1}, {0, 0}) == 1);
  CHECK(index.flat({1, 0}, {0, 0}) == 2);
  CHECK(index.flat({0, 0}, {0, 1}) == 6);
  CHECK(kind_of([&] { index.flat({3, 0}, {0, 0}); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("scenario validation") {
  CHECK(kind_of([] { Scenario({2, 2}, {2}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Scenario({2, 0}, {2, 2}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("timing regime names") {
  for (const char* name : {"indefinite", "parallel", "seq:AB", "seq:BA", "seq:CAB"}) {
    CHECK(TimingRegime::parse(name).name() == name);
  }
  CHECK(kind_of([] { TimingRegime::parse("seq:AA"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { TimingRegime::parse("later"); }) == ErrorKind::ParseError);
  const auto seq = TimingRegime::parse("seq:BA");
  CHECK(seq.forbidden_inputs(1, 2) == std::vector<bool>{true, true});
  CHECK(seq.forbidden_inputs(0, 2) == std::vector<bool>{true, false});
  CHECK(TimingRegime::indefinite().forbidden_inputs(0, 3) == std::vector<bool>{true, false, false});
}

TEST_CASE("behavior validation") {
  RationalVector t(16, Rational(1, 4));
  CHECK_NOTHROW(Behavior(k2222, t));
  t[0] = Rational(-1, 4);
  t[1] = Rational(3, 4);
  CHECK(kind_of([&] { Behavior(k2222, t); }) == ErrorKind::InvalidBehavior);
  t.assign(16, Rational(1, 3));
  CHECK(kind_of([&] { Behavior(k2222, t); }) == ErrorKind::InvalidBehavior);
  t.resize(15);
  CHECK(kind_of([&] { Behavior(k2222, t); }) == ErrorKind::InvalidBehavior);
}

TEST_CASE("mixing two deterministic vertices") {
  const auto det = catalog::generate(catalog::Family::DetIndef, k2222);
  const std::vector<Behavior> pair{det[0], det[5]};
  const std::vector<Rational> w{Rational(1, 2), Rational(1, 2)};
  const Behavior m = mix(pair, w);
  for (const auto& v : m.table()) CHECK((v == 0 || v == Rational(1, 2) || v == 1));
  const std::vector<Rational> bad{Rational(1, 2), Rational(1, 3)};
  CHECK(kind_of([&] { mix(pair, bad); }) == ErrorKind::WeightError);
}

TEST_CASE("nbts checks by regime") {
  const Behavior pr = pr_box();
  CHECK(check_nbts(pr, TimingRegime::indefinite()).holds);
  CHECK(check_nbts(pr, TimingRegime::parallel()).holds);
  CHECK_FALSE(check_classicality_equalities(pr).holds);

  const Behavior gyni = catalog::gyni_behavior();
  CHECK(check_nbts(gyni, TimingRegime::indefinite()).holds);
  const auto par = check_nbts(gyni, TimingRegime::parallel());
  CHECK_FALSE(par.holds);
  CHECK_FALSE(par.violations.empty());
  for (const auto& v : par.violations) CHECK(v.lhs != v.rhs);
  // a = y is fine when A acts second, b = x is not
  const auto seq = check_nbts(gyni, TimingRegime::parse("seq:BA"));
  CHECK_FALSE(seq.holds);
  for (const auto& v : seq.violations) CHECK(v.party == 1);
}

TEST_CASE("marginals") {
  const auto m = marginal(pr_box(), 0);
  for (std::size_t xi = 0; xi < 4; ++xi) CHECK(m.at(0, xi) == Rational(1, 2));
}

TEST_CASE("independent classicality equalities match the counting formula") {
  for (std::size_t a = 2; a <= 3; ++a)
    for (std::size_t b = 2; b <= 3; ++b)
      for (std::size_t x = 1; x <= 3; ++x)
        for (std::size_t y = 1; y <= 3; ++y) {
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(x);
          CAPTURE(y);
          CHECK(constraints::count_independent_classicality(Scenario::bipartite(a, b, x, y)) ==
                (a - 1) * (b - 1) * (x - 1) * (y - 1));
        }
  CHECK(kind_of([] { constraints::count_independent_classicality(Scenario({2, 2, 2}, {2, 2, 2})); }) ==
        ErrorKind::WrongPartyCount);
}

TEST_CASE("equality spans nest parallel inside sequential inside indefinite") {
  // span(NBTS_indef) is contained in span(NBTS_seq), which is contained in span(NBTS_par)
  const std::size_t n = k2222.coordinate_count();
  auto span_rank = [&](std::vector<constraints::LinearConstraint> rows) { return constraints::constraint_rank(rows, n); };
  auto eqs = [&](const TimingRegime& r) {
    auto v = constraints::normalization_constraints(k2222);
    auto e = constraints::nbts_constraints(k2222, r);
    v.insert(v.end(), e.begin(), e.end());
    return v;
  };
  const auto indef = eqs(TimingRegime::indefinite());
  const auto seq = eqs(TimingRegime::parse("seq:AB"));
  const auto par = eqs(TimingRegime::parallel());
  auto joined = [](auto a, const auto& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  CHECK(span_rank(joined(indef, seq)) == span_rank(seq));
  CHECK(span_rank(joined(seq, par)) == span_rank(par));
  CHECK(span_rank(indef) < span_rank(seq));
  CHECK(span_rank(seq) < span_rank(par));
}

TEST_CASE("linear algebra") {
  linalg::Matrix m = linalg::Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
  CHECK(linalg::rank(m) == 2);
  CHECK(linalg::independent_rows(m) == std::vector<std::size_t>{0, 2});
  linalg::Matrix sq = linalg::Matrix::from_rows({{2, 1}, {1, 1}}, 2);
  auto inv = linalg::inverse(sq);
  REQUIRE(inv);
  CHECK((*inv)(0, 0) == 1);
  CHECK((*inv)(0, 1) == -1);
  CHECK_FALSE(linalg::inverse(m));
  auto x = linalg::solve_unique(sq, {3, 2});
  REQUIRE(x);
  CHECK(*x == RationalVector{1, 1});
  // projection of the origin onto x + y = 1
  linalg::Matrix line = linalg::Matrix::from_rows({{1, 1}}, 2);
  CHECK(linalg::project_onto_affine(line, {1}, {0, 0}) == RationalVector{Rational(1, 2), Rational(1, 2)});
}
