#include <doctest.h>

#include "nbts/catalog.hpp"
#include "nbts/decomposer.hpp"
#include "nbts/error.hpp"
#include "support.hpp"

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

}  // namespace

TEST_CASE("a single vertex decomposes to itself") {
  const Scenario s = Scenario::bipartite(2, 2, 2, 2);
  for (const auto& v : catalog::generate(catalog::Family::ClassicalGeneral, s)) {
    const auto d = decomposer::decompose(v);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].weight == 1);
    CHECK(d.terms[0].vertex.to_behavior(s) == v);
  }
}

TEST_CASE("random mixtures decompose and recompose exactly") {
  std::mt19937_64 rng(11);
  for (auto s : {Scenario::bipartite(2, 2, 2, 2), Scenario::bipartite(3, 3, 2, 2), Scenario::bipartite(2, 2, 3, 3),
                 Scenario::bipartite(3, 2, 2, 3)}) {
    const auto pool = catalog::generate(catalog::Family::ClassicalGeneral, s);
    const std::size_t bound = s.outputs()[0] * s.outputs()[1] * s.inputs()[0] * s.inputs()[1];
    for (int trial = 0; trial < 30; ++trial) {
      const Behavior b = testing::random_mixture(pool, 1 + trial % 6, rng);
      const auto d = decomposer::decompose(b);
      CHECK(d.terms.size() <= bound);
      CHECK(decomposer::recompose(d, s) == b);
      Rational total = 0;
      for (const auto& t : d.terms) {
        CHECK(sgn(t.weight) > 0);
        total += t.weight;
      }
      CHECK(total == 1);
      for (std::size_t k = 1; k < d.trace.size(); ++k) CHECK(d.trace[k].zero_count > d.trace[k - 1].zero_count);
    }
  }
}

TEST_CASE("non-classical inputs are rejected") {
  const Scenario s = Scenario::bipartite(2, 2, 2, 2);
  const auto pr = catalog::generate(catalog::Family::PrLike, s)[0];
  try {
    decomposer::decompose(pr);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionFailed);
    CHECK(e.detail().starts_with("classicality"));
  }
  try {
    // A's output follows A's own input
    decomposer::decompose(Behavior::from_function(s, [](const auto& a, const auto& x) {
      return Rational(a[0] == x[0] && a[1] == 0 ? 1 : 0);
    }));
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionFailed);
    CHECK(e.detail().starts_with("nbts"));
  }
  CHECK(kind_of([] { decomposer::decompose(Behavior::uniform(Scenario({2, 2, 2}, {2, 2, 2}))); }) ==
        ErrorKind::PreconditionFailed);
}

TEST_CASE("recompose validates weights and vertices") {
  const Scenario s = Scenario::bipartite(2, 2, 2, 2);
  decomposer::ConvexDecomposition d;
  d.terms.push_back({Rational(1, 2), {}});
  CHECK(kind_of([&] { decomposer::recompose(d, s); }) == ErrorKind::WeightError);
  catalog::ClassicalVertex v;
  v.kind = catalog::ClassicalVertex::Kind::ABeforeB;
  v.beta_x = {0, 1, 0};
  d.terms = {{1, v}};
  CHECK(kind_of([&] { decomposer::recompose(d, s); }) == ErrorKind::ScenarioMismatch);
}
