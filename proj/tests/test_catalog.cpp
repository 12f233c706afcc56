#include <doctest.h>

#include "nbts/catalog.hpp"
#include "nbts/error.hpp"
#include "nbts/geometry.hpp"
#include "support.hpp"

using namespace nbts;

namespace {

const Scenario k2222 = Scenario::bipartite(2, 2, 2, 2);

std::vector<RationalVector> enumerated(const char* regime, bool classical) {
  return geometry::enumerate_vertices(constraints::build_polytope(k2222, TimingRegime::parse(regime), classical))
      .vertices;
}

}  // namespace

TEST_CASE("family sizes") {
  using catalog::Family;
  const std::pair<Family, std::size_t> sizes[] = {
      {Family::DetIndef, 16}, {Family::PrLike, 8},     {Family::ClassicalIndef, 12}, {Family::DetPar, 4},
      {Family::LincorrPar, 6}, {Family::DetSeq, 8}, {Family::LincorrSeq, 4}, {Family::ClassicalGeneral, 12},
  };
  for (const auto& [f, n] : sizes) {
    CAPTURE(catalog::family_name(f));
    CHECK(catalog::generate(f, k2222).size() == n);
    CHECK(catalog::parse_family(catalog::family_name(f)) == f);
  }
  CHECK_THROWS_AS(catalog::parse_family("nope"), Error);
}

TEST_CASE("catalogs equal enumerated vertex sets") {
  for (const char* regime : {"indefinite", "parallel", "seq:AB", "seq:BA"}) {
    for (bool classical : {false, true}) {
      if (std::string_view(regime).starts_with("seq") && !classical) continue;  // see next case
      CAPTURE(regime);
      CAPTURE(classical);
      const auto cat = testing::tables(catalog::vertex_set(TimingRegime::parse(regime), classical, k2222));
      CHECK(cat == enumerated(regime, classical));
    }
  }
}

TEST_CASE("sequential NBTS catalog is a strict subset of the enumerated vertices") {
  // The listed families give 20 vertices; enumeration finds 8 more (one input
  // of A carries a PR-like correlation with B, the other fixes B's output).
  for (const char* regime : {"seq:AB", "seq:BA"}) {
    CAPTURE(regime);
    const auto cat = testing::tables(catalog::vertex_set(TimingRegime::parse(regime), false, k2222));
    const auto all = enumerated(regime, false);
    CHECK(cat.size() == 20);
    CHECK(all.size() == 28);
    CHECK(std::includes(all.begin(), all.end(), cat.begin(), cat.end(), lex_less));
  }
}

TEST_CASE("catalog members satisfy their regime") {
  for (const char* regime : {"indefinite", "parallel", "seq:AB", "seq:BA"}) {
    for (bool classical : {false, true}) {
      const auto r = TimingRegime::parse(regime);
      const auto h = constraints::build_polytope(k2222, r, classical);
      for (const auto& b : catalog::vertex_set(r, classical, k2222)) {
        CHECK(h.contains(b.table()));
        CHECK(geometry::is_vertex(h, b.table()));
      }
    }
  }
}

TEST_CASE("general classical vertices at larger scenarios") {
  for (auto s : {Scenario::bipartite(3, 2, 2, 2), Scenario::bipartite(2, 2, 2, 3), Scenario::bipartite(2, 3, 3, 2)}) {
    CAPTURE(s.to_string());
    const auto cat = testing::tables(catalog::generate(catalog::Family::ClassicalGeneral, s));
    const auto en =
        geometry::enumerate_vertices(constraints::build_polytope(s, TimingRegime::indefinite(), true)).vertices;
    CHECK(cat == en);
  }
}

TEST_CASE("binary families reject other scenarios") {
  try {
    catalog::generate(catalog::Family::PrLike, Scenario::bipartite(3, 2, 2, 2));
    FAIL("expected UnsupportedScenario");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedScenario);
  }
}

TEST_CASE("classical vertex kinds") {
  catalog::ClassicalVertex v;
  v.kind = catalog::ClassicalVertex::Kind::ABeforeB;
  v.alpha = 1;
  v.beta_x = {0, 1};
  const Behavior b = v.to_behavior(k2222);
  CHECK(b(1, 0, 0, 1) == 1);
  CHECK(b(1, 1, 1, 0) == 1);
  CHECK(b.is_deterministic());
  CHECK(catalog::parse_kind(catalog::kind_name(v.kind)) == v.kind);
  CHECK_THROWS_AS(catalog::parse_kind("sideways"), Error);
}

TEST_CASE("GYNI vertex") {
  const Behavior g = catalog::gyni_behavior();
  CHECK(catalog::is_gyni_vertex(g));
  CHECK_FALSE(catalog::is_gyni_vertex(catalog::swap_parties(catalog::generate(catalog::Family::DetPar, k2222)[1])));
  try {
    catalog::is_gyni_vertex(Behavior::uniform(k2222));
    FAIL("expected NotDeterministic");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDeterministic);
  }
}
