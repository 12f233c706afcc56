#include <doctest.h>

#include "nbts/error.hpp"
#include "nbts/twotime/analysis.hpp"
#include "nbts/twotime/random.hpp"

using namespace nbts;
using namespace nbts::twotime;

namespace {

CMatrix ket_bra(std::size_t d, std::size_t i, std::size_t j) {
  CMatrix m = CMatrix::Zero(static_cast<long>(d), static_cast<long>(d));
  m(static_cast<long>(i), static_cast<long>(j)) = 1;
  return m;
}

CMatrix plus_projector() { return CMatrix::Constant(2, 2, 0.5); }

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

TEST_CASE("state and effect contract to the Born rule") {
  random::Rng rng(3);
  const CMatrix rho = random::density(3, rng);
  CMatrix e = random::density(3, rng);
  e /= e.trace().real() * 2;  // keep it below identity
  const auto s = state(rho, {{"W", 3}});
  const auto f = effect(e, {{"W", 3}});
  const Complex expected = (e * rho).trace();
  CHECK(std::abs(bullet(s, f).value() - expected) < 1e-12);
  CHECK(std::abs(bullet(f, s).value() - expected) < 1e-12);
}

TEST_CASE("bullet errors") {
  const auto s = state(ket_bra(2, 0, 0), {{"W", 2}});
  CHECK(kind_of([&] { bullet(s, s); }) == ErrorKind::IndexCollision);
  const auto f3 = effect(ket_bra(3, 0, 0), {{"W", 3}});
  CHECK(kind_of([&] { bullet(s, f3); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([&] { s.value(); }) == ErrorKind::NonScalarResult);
  CHECK(kind_of([&] { state(ket_bra(2, 0, 1), {{"W", 2}}); }) == ErrorKind::NotPositive);
}

TEST_CASE("channels act as expected") {
  random::Rng rng(5);
  const CMatrix rho = random::density(2, rng);
  const auto in = state(rho, {{"I", 2}});
  const auto id = identity_channel("I", "O", 2);
  CHECK(max_abs_diff(bullet(id, in), state(rho, {{"O", 2}})) < 1e-12);

  const CMatrix x = named_unitary("X", 2);
  const auto ux = bullet(unitary_channel(x, {"I", 2}, {"O", 2}), in);
  CHECK(max_abs_diff(ux, state(x * rho * x.adjoint(), {{"O", 2}})) < 1e-12);

  const auto t = bullet(throw_away_replace("I", "O", 2, 3), in);
  CHECK(max_abs_diff(t, state(CMatrix::Identity(3, 3) / 3.0, {{"O", 3}})) < 1e-12);

  const auto rc = random::channel({{"I", 2}}, {{"O", 3}}, 2, rng);
  CHECK(is_trace_preserving(rc, "I", "O"));
  CHECK(check_positivity(rc).positive);
  CHECK(is_trace_preserving(throw_away_replace("I", "O", 2, 3), "I", "O"));
  CHECK(kind_of([&] { is_trace_preserving(rc, "I", "Q"); }) == ErrorKind::WrongWireSet);
}

TEST_CASE("unitary family and names") {
  CHECK(unitary_family(2).size() == 8);
  for (const auto& u : unitary_family(3)) {
    CAPTURE(u.name);
    CHECK((u.u.adjoint() * u.u - CMatrix::Identity(3, 3)).norm() < 1e-12);
  }
  const CMatrix z = named_unitary("Z", 2);
  CHECK(std::abs(z(1, 1) + 1.0) < 1e-12);
  CHECK_THROWS_AS(named_unitary("Q", 2), Error);
}

TEST_CASE("measurements sum to a channel") {
  const Wire in{"A1", 3}, out{"A2", 3};
  for (const auto& m : {computational_measurement(in, out, std::nullopt), computational_measurement(in, out, 0),
                        superposition_measurement(0, 2, true, in, out, std::nullopt), discard_and_randomize(in, out)}) {
    CAPTURE(m.name);
    CHECK(m.elements.size() == 3);
    CHECK(is_trace_preserving(m.total(), "A1", "A2"));
  }
}

TEST_CASE("probability normalizes by the summed process") {
  const auto eta = bullet(state(ket_bra(2, 0, 0), {{"A1", 2}}), effect(CMatrix::Identity(2, 2), {{"A3", 2}}));
  const auto m = computational_measurement({"A1", 2}, {"A2", 2}, std::nullopt);
  const auto c = identity_channel("A2", "A3", 2);
  const auto p = probability(eta, {&m}, {&c});
  REQUIRE(p.size() == 2);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));

  const auto dead = bullet(state(ket_bra(2, 0, 0), {{"A1", 2}}), effect(ket_bra(2, 1, 1), {{"A3", 2}}));
  CHECK(kind_of([&] { probability(dead, {&m}, {&c}); }) == ErrorKind::ZeroDenominator);
}

TEST_CASE("single-party witness and structural form") {
  random::Rng rng(9);
  const auto product = random::single_party_state(random::SingleKind::Product, 2, rng);
  const auto w = nbts_witness_single(product);
  CHECK(w.nbts);
  CHECK(w.worst_deviation <= 1e-9);
  CHECK(structural_form_check(product, StructuralForm::ProductIdentitySingle).matches);

  const auto counter = bullet(state(ket_bra(2, 0, 0), {{"A1", 2}}), effect(plus_projector(), {{"A3", 2}}));
  const auto wc = nbts_witness_single(counter);
  CHECK_FALSE(wc.nbts);
  CHECK(wc.worst_deviation >= 0.1);
  const auto sc = structural_form_check(counter, StructuralForm::ProductIdentitySingle);
  CHECK_FALSE(sc.matches);
  CHECK(sc.residual > 0.1);

  CHECK(parse_form(form_name(StructuralForm::SequentialBIdentity)) == StructuralForm::SequentialBIdentity);
}

TEST_CASE("linear states pass the channel identities") {
  random::Rng rng(13);
  for (auto k : {random::LinearKind::Parallel, random::LinearKind::AThenB, random::LinearKind::BThenA,
                 random::LinearKind::Mixture}) {
    const auto eta = random::linear_state(k, 2, rng);
    const auto r = is_linear_two_time(eta);
    CHECK(r.linear);
    for (double v : r.residuals) CHECK(v < 1e-9);
    CHECK(check_positivity(eta).positive);
  }
  // post-selection onto |++> after preparing |00> is not linear
  const CMatrix p00 = ket_bra(4, 0, 0);
  const CMatrix pp = CMatrix::Constant(4, 4, 0.25);
  const auto eta = bullet(state(p00, {{"A1", 2}, {"B1", 2}}), effect(pp, {{"A3", 2}, {"B3", 2}}));
  CHECK_FALSE(is_linear_two_time(eta).linear);
}

TEST_CASE("behavior extraction from a parallel state is input independent") {
  random::Rng rng(17);
  const auto eta = random::linear_state(random::LinearKind::Parallel, 2, rng);
  const auto alice = random::strategy('A', 2, 2, 2, rng);
  const auto bob = random::strategy('B', 2, 2, 2, rng);
  const auto ex = extract_behavior(eta, alice, bob);
  const Scenario& s = ex.raw.scenario;
  CHECK(s == Scenario::bipartite(2, 2, 2, 2));
  CHECK(ex.raw.max_imag < 1e-9);
  CHECK(max_violation(ex.raw.p, constraints::classicality_constraints(s, TimingRegime::parallel())) < 1e-8);
  CHECK(ex.rational.max_error < 1e-6);
}

TEST_CASE("rationalize pins and projects") {
  const Scenario s = Scenario::bipartite(2, 2, 1, 1);
  const std::vector<double> p{0.5 + 1e-12, 0.25, 0.25, 1e-13};
  const auto r = rationalize(p, s, constraints::normalization_constraints(s));
  CHECK(r.behavior.table() == RationalVector{Rational(1, 2), Rational(1, 4), Rational(1, 4), 0});
  CHECK(r.max_error < 1e-11);
  CHECK(kind_of([&] { rationalize({1.5, -0.5, 0, 0}, s, constraints::normalization_constraints(s)); }) ==
        ErrorKind::InvalidBehavior);
}
