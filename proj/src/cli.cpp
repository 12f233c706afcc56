#include "nbts/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nbts/catalog.hpp"
#include "nbts/decomposer.hpp"
#include "nbts/error.hpp"
#include "nbts/geometry.hpp"
#include "nbts/io.hpp"

namespace nbts::cli {

namespace {

using io::json;

struct Options {
  std::string scenario = "2,2,2,2";
  std::string regime = "indefinite";
  bool classical = false;
  double tol = twotime::kDefaultTol;
  bool trace = false;
  bool jsonl = false;
  std::string input;  // empty or "-" reads stdin
  std::string hpolytope;
  std::string family;
  std::string state;
  std::string strategies;
  std::string form = "product_identity_single";
};

Scenario parse_scenario(const std::string& text) {
  std::vector<std::size_t> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    unsigned long n = 0;
    try {
      n = std::stoul(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw CLI::ValidationError("--scenario", "expected d1,d2,m1,m2");
    v.push_back(n);
  }
  if (v.size() != 4) throw CLI::ValidationError("--scenario", "expected four comma-separated values");
  return Scenario::bipartite(v[0], v[1], v[2], v[3]);
}

class Runner {
 public:
  Runner(const Options& o, bool scenario_given, std::istream& in, std::ostream& out)
      : o_(o), scenario_given_(scenario_given), in_(in), out_(out) {}

  std::string read_text(const std::string& path) {
    if (path.empty() || path == "-") {
      std::stringstream ss;
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  json read_json(const std::string& path) { return io::parse(read_text(path)); }

  Scenario scenario() const { return parse_scenario(o_.scenario); }
  TimingRegime regime() const { return TimingRegime::parse(o_.regime); }

  constraints::HPolytope polytope() {
    if (!o_.hpolytope.empty()) return io::hpolytope_from_json(read_json(o_.hpolytope));
    return constraints::build_polytope(scenario(), regime(), o_.classical);
  }

  Behavior behavior_input() {
    Behavior b = io::behavior_from_json(read_json(o_.input));
    if (scenario_given_ && !(b.scenario() == scenario())) {
      throw Error(ErrorKind::ScenarioMismatch,
                  "behavior scenario " + b.scenario().to_string() + " differs from --scenario");
    }
    return b;
  }

  void emit(const json& j) { out_ << (o_.jsonl ? j.dump() : j.dump(2)) << '\n'; }

  int vertices() {
    const auto v = geometry::enumerate_vertices(polytope());
    if (o_.jsonl) {
      out_ << json{{"dim", v.ambient_dim}, {"count", v.vertices.size()}}.dump() << '\n';
      for (const auto& p : v.vertices) {
        json row = json::array();
        for (const auto& q : p) row.push_back(io::rational_to_json(q));
        out_ << row.dump() << '\n';
      }
      return 0;
    }
    json j = io::vpolytope_to_json(v);
    j["count"] = v.vertices.size();
    emit(j);
    return 0;
  }

  int dim() {
    const auto h = polytope();
    const auto hull = geometry::affine_hull(h);
    emit({{"dimension", hull.dimension},
          {"ambient_dim", h.ambient_dim()},
          {"implicit_equalities", hull.implicit_equalities}});
    return 0;
  }

  int member() {
    const Behavior b = behavior_input();
    const auto h = o_.hpolytope.empty() ? constraints::build_polytope(b.scenario(), regime(), o_.classical)
                                        : io::hpolytope_from_json(read_json(o_.hpolytope));
    const auto v = geometry::enumerate_vertices(h);
    const auto cert = geometry::contains(v, b.table());
    json j = io::certificate_to_json(cert);
    j["verdict"] = cert.member ? "member" : "not a member";
    emit(j);
    return 0;
  }

  int decompose() {
    const auto d = decomposer::decompose(behavior_input());
    emit(io::decomposition_to_json(d, o_.trace));
    return 0;
  }

  int nbts_check() {
    emit(io::nbts_report_to_json(check_nbts(behavior_input(), regime())));
    return 0;
  }

  int classical_check() {
    const Behavior b = behavior_input();
    const auto nbts = check_nbts(b, TimingRegime::indefinite());
    const auto eq = check_classicality_equalities(b);
    emit({{"classical", nbts.holds && eq.holds},
          {"nbts", io::nbts_report_to_json(nbts)},
          {"equalities", io::classicality_report_to_json(eq)}});
    return 0;
  }

  int catalog() {
    std::vector<catalog::Family> families;
    if (!o_.family.empty()) {
      families.push_back(catalog::parse_family(o_.family));
    } else {
      families = catalog::families_for(regime(), o_.classical);
    }
    std::vector<Behavior> members;
    if (o_.family.empty()) {
      members = catalog::vertex_set(regime(), o_.classical, scenario());
    } else {
      members = catalog::generate(families.front(), scenario());
    }
    json names = json::array();
    for (auto f : families) names.push_back(std::string(catalog::family_name(f)));
    if (o_.jsonl) {
      out_ << json{{"families", names}, {"count", members.size()}}.dump() << '\n';
      for (const auto& m : members) out_ << io::behavior_to_json(m).dump() << '\n';
      return 0;
    }
    json list = json::array();
    for (const auto& m : members) list.push_back(io::behavior_to_json(m));
    emit({{"families", names}, {"count", members.size()}, {"vertices", list}});
    return 0;
  }

  int table() {
    const Scenario s = scenario();
    if (!(s == Scenario::bipartite(2, 2, 2, 2))) {
      throw Error(ErrorKind::UnsupportedScenario, "expected values exist for 2,2,2,2 only");
    }
    bool all = true;
    json rows = json::array();
    for (const auto& r : expected_table()) {
      const auto h = constraints::build_polytope(s, TimingRegime::parse(r.regime), r.classical);
      const std::size_t d = geometry::affine_dimension(h);
      const std::size_t n = geometry::enumerate_vertices(h).vertices.size();
      const bool pass = d == r.dim && n == r.vertices;
      all = all && pass;
      rows.push_back({{"polytope", r.label},
                      {"regime", r.regime},
                      {"classical", r.classical},
                      {"dimension", d},
                      {"expected_dimension", r.dim},
                      {"vertices", n},
                      {"expected_vertices", r.vertices},
                      {"status", pass ? "PASS" : "FAIL"}});
    }
    if (o_.jsonl) {
      for (const auto& r : rows) out_ << r.dump() << '\n';
    } else {
      emit({{"rows", rows}, {"all_pass", all}});
    }
    return all ? 0 : 1;
  }

  twotime::LabeledTensor state_input(const std::string& path) { return io::tensor_from_json(read_json(path)); }

  int qstate_nbts() {
    const auto eta = state_input(o_.input);
    const auto form = twotime::parse_form(o_.form);
    const auto w = twotime::nbts_witness_single(eta, o_.tol);
    const auto s = twotime::structural_form_check(eta, form, o_.tol);
    emit({{"witness", io::witness_to_json(w)}, {"structural", io::structural_to_json(s, form)}});
    return 0;
  }

  int qstate_linear() {
    emit(io::linearity_to_json(twotime::is_linear_two_time(state_input(o_.input), o_.tol)));
    return 0;
  }

  int qstate_behavior() {
    if (o_.state.empty() || o_.strategies.empty()) {
      throw CLI::ValidationError("qstate-behavior", "--state and --strategies are required");
    }
    const auto eta = state_input(o_.state);
    const auto strat = io::strategies_from_json(read_json(o_.strategies), eta);
    const auto raw = twotime::behavior_table(eta, strat.alice, strat.bob, o_.tol);
    const Scenario& s = raw.scenario;
    const double nbts_dev = twotime::max_violation(raw.p, constraints::nbts_constraints(s, TimingRegime::indefinite()));
    const double eq_dev = twotime::max_violation(raw.p, constraints::classicality_constraints(s));
    json j = {{"raw", io::float_behavior_to_json(raw)},
              {"nbts_deviation", nbts_dev},
              {"classicality_deviation", eq_dev},
              {"nbts", nbts_dev <= o_.tol},
              {"classicality_equalities", eq_dev <= o_.tol}};
    if (o_.classical) {
      // round onto the classical polytope's equalities and test exactly
      const auto h = constraints::build_polytope(s, TimingRegime::indefinite(), true);
      const auto r = twotime::rationalize(raw.p, s, h.equalities());
      const auto cert = geometry::contains(h, r.behavior.table());
      j["rational"] = io::behavior_to_json(r.behavior);
      j["rationalization_error"] = r.max_error;
      j["classical_member"] = cert.member;
    } else {
      const auto r = twotime::rationalize(raw.p, s, constraints::normalization_constraints(s));
      j["rational"] = io::behavior_to_json(r.behavior);
      j["rationalization_error"] = r.max_error;
    }
    emit(j);
    return 0;
  }

  int equality_count() {
    const Scenario s = scenario();
    const auto& d = s.outputs();
    const auto& m = s.inputs();
    emit({{"count", constraints::count_independent_classicality(s)},
          {"formula", (d[0] - 1) * (d[1] - 1) * (m[0] - 1) * (m[1] - 1)}});
    return 0;
  }

 private:
  const Options& o_;
  bool scenario_given_;
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

const std::vector<TableRow>& expected_table() {
  static const std::vector<TableRow> rows = {
      {"NBTS Indefinite", "indefinite", false, 8, 24}, {"Classical Indefinite", "indefinite", true, 7, 12},
      {"NBTS Parallel", "parallel", false, 6, 18},     {"Classical Parallel", "parallel", true, 3, 4},
      {"NBTS Sequential A->B", "seq:AB", false, 7, 20}, {"Classical Sequential", "seq:AB", true, 5, 8},
  };
  return rows;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact NBTS and classical correlation polytopes", "nbts"};
  app.require_subcommand(1);
  app.fallthrough();
  auto* scenario_opt = app.add_option("--scenario", o.scenario, "d1,d2,m1,m2");
  app.add_option("--regime", o.regime, "indefinite | parallel | seq:AB | seq:BA");
  app.add_flag("--classical", o.classical, "use the classical polytope");
  app.add_option("--tol", o.tol, "numerical tolerance for two-time checks");
  app.add_flag("--trace", o.trace, "include the decomposer step trace");
  app.add_flag("--jsonl", o.jsonl, "line-delimited output");
  app.add_option("--input,-i", o.input, "input file (default stdin)");

  struct Command {
    const char* name;
    const char* help;
    int (Runner::*fn)();
  };
  const Command commands[] = {
      {"vertices", "enumerate vertices", &Runner::vertices},
      {"dim", "affine dimension", &Runner::dim},
      {"member", "exact membership of a behavior", &Runner::member},
      {"decompose", "classical convex decomposition", &Runner::decompose},
      {"nbts-check", "NBTS equalities for --regime", &Runner::nbts_check},
      {"classical-check", "NBTS plus four-term classicality equalities", &Runner::classical_check},
      {"catalog", "closed-form vertex families", &Runner::catalog},
      {"table", "dimension and vertex counts of the six polytopes", &Runner::table},
      {"qstate-nbts", "single-party witness and structural check", &Runner::qstate_nbts},
      {"qstate-linear", "linearity of a two-party state", &Runner::qstate_linear},
      {"qstate-behavior", "behavior of a state under strategies", &Runner::qstate_behavior},
      {"equality-count", "independent classicality equalities", &Runner::equality_count},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    if (std::string_view(c.name) == "vertices" || std::string_view(c.name) == "dim" ||
        std::string_view(c.name) == "member") {
      sub->add_option("--hpolytope", o.hpolytope, "explicit H-polytope JSON file");
    }
    if (std::string_view(c.name) == "catalog") sub->add_option("--family", o.family, "family name");
    if (std::string_view(c.name) == "qstate-nbts") sub->add_option("--form", o.form, "structural form");
    if (std::string_view(c.name) == "qstate-behavior") {
      sub->add_option("--state", o.state, "state tensor JSON file");
      sub->add_option("--strategies", o.strategies, "strategy JSON file");
    }
    subs.emplace_back(sub, &c);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (o.tol <= 0) throw CLI::ValidationError("--tol", "must be positive");
    parse_scenario(o.scenario);
    TimingRegime::parse(o.regime);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "invalid " << e.detail() << '\n';
    return 2;
  }

  Runner runner(o, scenario_opt->count() > 0, in, out);
  try {
    for (const auto& [sub, cmd] : subs)
      if (sub->parsed()) return (runner.*(cmd->fn))();
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.kind()))}, {"detail", e.detail()}}.dump() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    err << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace nbts::cli
