#include <doctest.h>

#include "nbts/catalog.hpp"
#include "nbts/error.hpp"
#include "nbts/geometry.hpp"
#include "nbts/lp.hpp"
#include "support.hpp"

using namespace nbts;
using constraints::LinearConstraint;
using constraints::Relation;

namespace {

LinearConstraint row(std::map<std::size_t, Rational> c, Rational rhs, Relation rel) {
  LinearConstraint out;
  out.coeffs = std::move(c);
  out.rhs = std::move(rhs);
  out.relation = rel;
  return out;
}

// unit square [0,1]^2
constraints::HPolytope square() {
  return constraints::HPolytope(2, {},
                                {row({{0, 1}}, 0, Relation::Geq), row({{1, 1}}, 0, Relation::Geq),
                                 row({{0, -1}}, -1, Relation::Geq), row({{1, -1}}, -1, Relation::Geq)});
}

const Scenario k2222 = Scenario::bipartite(2, 2, 2, 2);

}  // namespace

TEST_CASE("simplex solves a small LP exactly") {
  lp::Problem p;
  p.num_vars = 2;
  p.nonnegative = {true, true};
  p.rows = {row({{0, -1}, {1, -2}}, -4, Relation::Geq), row({{0, -3}, {1, -1}}, -6, Relation::Geq)};
  p.objective = {{0, 1}, {1, 1}};
  const auto r = lp::solve(p);
  REQUIRE(r.status == lp::Status::Optimal);
  CHECK(r.objective == Rational(14, 5));
  CHECK(r.x == RationalVector{Rational(8, 5), Rational(6, 5)});
}

TEST_CASE("simplex reports infeasible and unbounded") {
  lp::Problem p;
  p.num_vars = 1;
  p.rows = {row({{0, 1}}, 2, Relation::Geq), row({{0, -1}}, 0, Relation::Geq)};
  CHECK(lp::solve(p).status == lp::Status::Infeasible);
  p.rows = {row({{0, 1}}, 2, Relation::Geq)};
  p.objective = {{0, 1}};
  CHECK(lp::solve(p).status == lp::Status::Unbounded);
}

TEST_CASE("square vertices and dimension") {
  const auto v = geometry::enumerate_vertices(square());
  CHECK(v.vertices == std::vector<RationalVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(geometry::affine_dimension(square()) == 2);
}

TEST_CASE("degenerate and empty inputs") {
  // a segment embedded in the plane: x + y = 1 written as two inequalities
  constraints::HPolytope seg(2, {},
                             {row({{0, 1}}, 0, Relation::Geq), row({{1, 1}}, 0, Relation::Geq),
                              row({{0, 1}, {1, 1}}, 1, Relation::Geq), row({{0, -1}, {1, -1}}, -1, Relation::Geq)});
  const auto hull = geometry::affine_hull(seg);
  CHECK(hull.dimension == 1);
  CHECK(hull.implicit_equalities == std::vector<std::size_t>{2, 3});
  CHECK(geometry::enumerate_vertices(seg).vertices == std::vector<RationalVector>{{0, 1}, {1, 0}});

  constraints::HPolytope empty(1, {}, {row({{0, 1}}, 1, Relation::Geq), row({{0, -1}}, 0, Relation::Geq)});
  CHECK_THROWS_AS(geometry::affine_hull(empty), Error);

  constraints::HPolytope ray(1, {}, {row({{0, 1}}, 0, Relation::Geq)});
  try {
    geometry::enumerate_vertices(ray);
    FAIL("expected Unbounded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unbounded);
  }
}

TEST_CASE("capacity guardrail") {
  constraints::HPolytope big(geometry::kMaxAmbientDim + 1, {}, {});
  try {
    geometry::enumerate_vertices(big);
    FAIL("expected CapacityExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapacityExceeded);
  }
}

TEST_CASE("double description agrees with a basic-solution oracle") {
  for (const char* regime : {"indefinite", "parallel", "seq:AB", "seq:BA"}) {
    for (bool classical : {false, true}) {
      CAPTURE(regime);
      CAPTURE(classical);
      const auto h = constraints::build_polytope(k2222, TimingRegime::parse(regime), classical);
      CHECK(geometry::enumerate_vertices(h).vertices == testing::brute_force_vertices(h));
    }
  }
}

TEST_CASE("every enumerated vertex passes is_vertex; interior points do not") {
  const auto h = constraints::build_polytope(k2222, TimingRegime::indefinite(), false);
  const auto v = geometry::enumerate_vertices(h);
  for (const auto& p : v.vertices) CHECK(geometry::is_vertex(h, p));
  CHECK_FALSE(geometry::is_vertex(h, Behavior::uniform(k2222).table()));
  RationalVector bad(16, 0);
  CHECK_THROWS_AS(geometry::is_vertex(h, bad), Error);
}

TEST_CASE("membership certificates") {
  const auto h = constraints::build_polytope(k2222, TimingRegime::indefinite(), true);
  const auto v = geometry::enumerate_vertices(h);

  const auto inside = geometry::contains(v, Behavior::uniform(k2222).table());
  CHECK(inside.member);
  CHECK(geometry::verify_certificate(v, Behavior::uniform(k2222).table(), inside));

  const auto gyni = catalog::gyni_behavior().table();
  const auto outside = geometry::contains(v, gyni);
  CHECK_FALSE(outside.member);
  REQUIRE(outside.separator);
  CHECK(linalg::dot(outside.separator->coeffs, gyni) < outside.separator->rhs);
  for (const auto& p : v.vertices) CHECK(linalg::dot(outside.separator->coeffs, p) >= outside.separator->rhs);
  CHECK(geometry::verify_certificate(v, gyni, outside));

  // a tampered certificate fails verification
  auto forged = outside;
  forged.member = true;
  CHECK_FALSE(geometry::verify_certificate(v, gyni, forged));

  const auto hform = geometry::contains(h, gyni);
  CHECK_FALSE(hform.member);
  REQUIRE(hform.separator);
  CHECK(linalg::dot(hform.separator->coeffs, gyni) < hform.separator->rhs);
}
