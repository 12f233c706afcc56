// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "nbts/catalog.hpp"
#include "nbts/cli.hpp"
#include "nbts/decomposer.hpp"
#include "nbts/error.hpp"
#include "nbts/geometry.hpp"
#include "nbts/twotime/analysis.hpp"
#include "nbts/twotime/random.hpp"
#include "support.hpp"

using namespace nbts;

namespace {

const Scenario k2222 = Scenario::bipartite(2, 2, 2, 2);

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::vector<std::string> failed;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      failed.push_back(what);
      pass = false;
    }
  }
  std::string summary() const {
    std::string out = note.str();
    if (!failed.empty()) {
      out += " | failed:";
      for (const auto& f : failed) out += " [" + f + "]";
    }
    return out;
  }
};

geometry::VPolytope classical_indefinite_vertices() {
  return geometry::enumerate_vertices(constraints::build_polytope(k2222, TimingRegime::indefinite(), true));
}

void table_one(Outcome& o) {
  for (const auto& row : cli::expected_table()) {
    const auto h = constraints::build_polytope(k2222, TimingRegime::parse(row.regime), row.classical);
    const std::size_t d = geometry::affine_dimension(h);
    const std::size_t n = geometry::enumerate_vertices(h).vertices.size();
    o.note << row.label << " " << d << "/" << n << " (expected " << row.dim << "/" << row.vertices << ") ";
    o.require(d == row.dim, std::string(row.label) + " dimension");
    o.require(n == row.vertices, std::string(row.label) + " vertex count");
  }
}

void vertex_identity(Outcome& o) {
  for (const auto& row : cli::expected_table()) {
    const auto r = TimingRegime::parse(row.regime);
    const auto cat = testing::tables(catalog::vertex_set(r, row.classical, k2222));
    const auto en = geometry::enumerate_vertices(constraints::build_polytope(k2222, r, row.classical)).vertices;
    o.note << row.label << " catalog " << cat.size() << " enumerated " << en.size() << "; ";
    o.require(cat == en, std::string(row.label) + " vertex set");
  }
}

void counting(Outcome& o) {
  const std::pair<std::array<std::size_t, 4>, std::size_t> cases[] = {
      {{2, 2, 2, 2}, 1}, {{3, 2, 2, 2}, 2}, {{2, 3, 3, 2}, 2}, {{3, 3, 3, 3}, 16}};
  for (const auto& [c, expected] : cases) {
    const std::size_t got =
        constraints::count_independent_classicality(Scenario::bipartite(c[0], c[1], c[2], c[3]));
    const std::size_t formula = (c[0] - 1) * (c[1] - 1) * (c[2] - 1) * (c[3] - 1);
    const std::string at = "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) +
                           "," + std::to_string(c[3]) + ")";
    o.note << at << " count " << got << " formula " << formula << " listed " << expected << "; ";
    o.require(got == formula, at + " count vs formula");
    o.require(got == expected, at + " count vs listed value");
  }
}

void round_trip(Outcome& o) {
  std::mt19937_64 rng(2024);
  const std::pair<std::size_t, std::size_t> dm[] = {{2, 2}, {3, 2}, {2, 3}};
  std::size_t done = 0, max_terms = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto [d, m] = dm[k % 3];
    const Scenario s = Scenario::bipartite(d, d, m, m);
    static std::map<std::size_t, std::vector<Behavior>> pools;
    auto& pool = pools[d * 10 + m];
    if (pool.empty()) pool = catalog::generate(catalog::Family::ClassicalGeneral, s);
    const Behavior b = testing::random_mixture(pool, 1 + k % 8, rng);
    try {
      const auto dec = decomposer::decompose(b);
      bool ok = dec.terms.size() <= d * d * m * m;
      for (std::size_t i = 1; i < dec.trace.size(); ++i) ok = ok && dec.trace[i].zero_count > dec.trace[i - 1].zero_count;
      ok = ok && decomposer::recompose(dec, s) == b;
      max_terms = std::max(max_terms, dec.terms.size());
      if (ok) ++done;
    } catch (const Error&) {
    }
  }
  o.note << done << "/1000 mixtures round-tripped (max " << max_terms << " terms); ";
  o.require(done == 1000, "classical mixtures");

  const auto pr = catalog::generate(catalog::Family::PrLike, k2222);
  const auto classical = classical_indefinite_vertices();
  std::size_t rejected = 0, drawn = 0, redrawn = 0;
  while (drawn < 100) {
    const Behavior b = testing::random_mixture(pr, 1 + drawn % 3, rng);
    if (geometry::contains(classical, b.table()).member) {
      ++redrawn;  // e.g. equal-weight pairs cancelling to a classical point
      continue;
    }
    ++drawn;
    try {
      decomposer::decompose(b);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::PreconditionFailed) ++rejected;
    }
  }
  o.note << rejected << "/100 PR-like mixtures rejected (" << redrawn << " classical draws skipped)";
  o.require(rejected == 100, "PR-like rejection");
}

void lp_oracle(Outcome& o) {
  std::mt19937_64 rng(77);
  const auto nbts = geometry::enumerate_vertices(constraints::build_polytope(k2222, TimingRegime::indefinite(), false));
  const auto classical = classical_indefinite_vertices();
  std::vector<Behavior> all, cl;
  for (const auto& v : nbts.vertices) all.emplace_back(k2222, v);
  for (const auto& v : classical.vertices) cl.emplace_back(k2222, v);
  std::size_t agree = 0, members = 0;
  for (int k = 0; k < 500; ++k) {
    // half the draws use only the classical vertices so both verdicts occur
    const Behavior b = testing::random_mixture(k % 2 ? all : cl, 1 + k % 4, rng);
    const bool lp = geometry::contains(classical, b.table()).member;
    bool accepted = true;
    try {
      decomposer::decompose(b);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PreconditionFailed) throw;
      accepted = false;
    }
    agree += (lp == accepted);
    members += lp;
  }
  o.note << agree << "/500 verdicts agree (" << members << " members)";
  o.require(agree == 500, "decomposer vs LP");
}

void witness_vs_form(Outcome& o) {
  using namespace twotime;
  random::Rng rng(31);
  std::size_t agree = 0, products = 0;
  double worst_product = 0;
  for (int k = 0; k < 200; ++k) {
    const auto kind = static_cast<random::SingleKind>(k % 3);
    const auto eta = random::single_party_state(kind, 2, rng);
    const auto w = nbts_witness_single(eta);
    const auto s = structural_form_check(eta, StructuralForm::ProductIdentitySingle);
    agree += (w.nbts == s.matches);
    if (kind == random::SingleKind::Product) {
      ++products;
      worst_product = std::max(worst_product, w.worst_deviation);
    }
  }
  CMatrix pre = CMatrix::Zero(2, 2);
  pre(0, 0) = 1;
  const auto counter = bullet(state(pre, {{"A1", 2}}), effect(CMatrix::Constant(2, 2, 0.5), {{"A3", 2}}));
  const double dev = nbts_witness_single(counter).worst_deviation;
  o.note << agree << "/200 verdicts agree; worst product deviation " << worst_product << " over " << products
         << "; counterexample deviation " << dev;
  o.require(agree == 200, "witness vs structural");
  o.require(worst_product <= 1e-9, "product deviation");
  o.require(dev >= 0.1, "counterexample deviation");
}

void linear_states(Outcome& o) {
  using namespace twotime;
  random::Rng rng(57);
  const auto classical = classical_indefinite_vertices();
  const auto h = constraints::build_polytope(k2222, TimingRegime::indefinite(), true);
  const auto nbts_rows = constraints::nbts_constraints(k2222, TimingRegime::indefinite());
  const auto four_term = constraints::classicality_constraints(k2222);
  double worst_nbts = 0, worst_eq = 0, worst_err = 0, worst_par = 0, worst_seq = 0;
  std::size_t members = 0, behaviors = 0;
  for (int k = 0; k < 50; ++k) {
    const auto kind = static_cast<random::LinearKind>(k % 4);
    const auto eta = random::linear_state(kind, 2, rng);
    for (int t = 0; t < 2; ++t) {
      const auto alice = random::strategy('A', 2, 2, 2, rng);
      const auto bob = random::strategy('B', 2, 2, 2, rng);
      const auto raw = behavior_table(eta, alice, bob);
      ++behaviors;
      worst_nbts = std::max(worst_nbts, max_violation(raw.p, nbts_rows));
      worst_eq = std::max(worst_eq, max_violation(raw.p, four_term));
      if (kind == random::LinearKind::Parallel) {
        worst_par = std::max(worst_par, max_violation(raw.p, constraints::classicality_constraints(k2222, TimingRegime::parallel())));
      } else if (kind == random::LinearKind::AThenB || kind == random::LinearKind::BThenA) {
        const auto r = TimingRegime::parse(kind == random::LinearKind::AThenB ? "seq:AB" : "seq:BA");
        worst_seq = std::max(worst_seq, max_violation(raw.p, constraints::classicality_constraints(k2222, r)));
      }
      const auto rat = rationalize(raw.p, k2222, h.equalities());
      worst_err = std::max(worst_err, rat.max_error);
      members += geometry::contains(classical, rat.behavior.table()).member;
    }
  }
  o.note << behaviors << " behaviors; max NBTS dev " << worst_nbts << ", four-term dev " << worst_eq
         << ", parallel dev " << worst_par << ", later-input dev " << worst_seq << ", rounding error " << worst_err
         << ", " << members << " exact members";
  o.require(worst_nbts <= 1e-8, "NBTS");
  o.require(worst_eq <= 1e-8, "four-term equalities");
  o.require(worst_par <= 1e-8, "parallel input independence");
  o.require(worst_seq <= 1e-8, "later-input independence");
  o.require(worst_err < 1e-6, "rounding error");
  o.require(members == behaviors, "exact membership");
}

void gyni(Outcome& o) {
  const Behavior g = catalog::gyni_behavior();
  const auto h = constraints::build_polytope(k2222, TimingRegime::indefinite(), false);
  const bool vertex = geometry::is_vertex(h, g.table());
  const auto classical = classical_indefinite_vertices();
  const auto cert = geometry::contains(classical, g.table());
  bool separates = !cert.member && cert.separator.has_value();
  if (separates) {
    separates = linalg::dot(cert.separator->coeffs, g.table()) < cert.separator->rhs;
    for (const auto& v : classical.vertices)
      separates = separates && linalg::dot(cert.separator->coeffs, v) >= cert.separator->rhs;
  }
  o.note << "vertex=" << vertex << " member=" << cert.member << " separator verified=" << separates;
  o.require(vertex, "NBTS vertex");
  o.require(separates && geometry::verify_certificate(classical, g.table(), cert), "exact separator");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {1, "table of dimensions and vertex counts", 10, table_one},
      {2, "enumerated vertex sets equal the catalogs", 10, vertex_identity},
      {3, "independent classicality equality counts", 5, counting},
      {4, "decomposition round trip", 60, round_trip},
      {5, "decomposer agrees with LP membership", 60, lp_oracle},
      {6, "single-party witness vs structural form", 30, witness_vs_form},
      {7, "linear two-time states give classical behaviors", 120, linear_states},
      {8, "GYNI separation", 1, gyni},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    o.require(secs <= c.limit_seconds, "runtime over " + std::to_string(static_cast<int>(c.limit_seconds)) + "s");
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << timing << "] "
              << o.summary() << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
