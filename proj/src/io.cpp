#include "nbts/io.hpp"

#include <functional>

#include "nbts/error.hpp"

namespace nbts::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> sizes_from_json(const json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& e : j) out.push_back(size_from_json(e, what));
  return out;
}

json nest(const RationalVector& flat, const std::vector<std::size_t>& dims, std::size_t level, std::size_t& pos) {
  if (level == dims.size()) return rational_to_json(flat[pos++]);
  json arr = json::array();
  for (std::size_t k = 0; k < dims[level]; ++k) arr.push_back(nest(flat, dims, level + 1, pos));
  return arr;
}

void flatten(const json& j, const std::vector<std::size_t>& dims, std::size_t level, RationalVector& out) {
  if (level == dims.size()) {
    out.push_back(rational_from_json(j));
    return;
  }
  if (!j.is_array() || j.size() != dims[level]) {
    fail("p: nesting level " + std::to_string(level) + " must have " + std::to_string(dims[level]) + " entries");
  }
  for (const auto& e : j) flatten(e, dims, level + 1, out);
}

json constraint_to_json(const constraints::LinearConstraint& c) {
  json coeffs = json::object();
  for (const auto& [i, v] : c.coeffs) coeffs[std::to_string(i)] = rational_to_json(v);
  return {{"c", coeffs}, {"rhs", rational_to_json(c.rhs)}};
}

constraints::LinearConstraint constraint_from_json(const json& j, constraints::Relation rel) {
  constraints::LinearConstraint c;
  c.relation = rel;
  const json& coeffs = field(j, "c");
  if (!coeffs.is_object()) fail("constraint 'c' must be an object");
  for (const auto& [k, v] : coeffs.items()) {
    std::size_t idx = 0;
    try {
      std::size_t used = 0;
      idx = std::stoul(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      fail("constraint index '" + k + "' is not an integer");
    }
    Rational q = rational_from_json(v);
    if (sgn(q) != 0) c.coeffs[idx] = q;
  }
  c.rhs = rational_from_json(field(j, "rhs"));
  return c;
}

RationalVector vector_from_json(const json& j) {
  if (!j.is_array()) fail("vector must be an array");
  RationalVector out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

json vector_to_json(const RationalVector& v) {
  json arr = json::array();
  for (const auto& e : v) arr.push_back(rational_to_json(e));
  return arr;
}

twotime::Measurement measurement_from_json(const json& j, const twotime::Wire& in, const twotime::Wire& out) {
  const std::string type = field(j, "type").get<std::string>();
  std::optional<std::size_t> reprepare;
  if (j.contains("reprepare") && !j.at("reprepare").is_null()) reprepare = size_from_json(j.at("reprepare"), "reprepare");
  if (type == "computational") return twotime::computational_measurement(in, out, reprepare);
  if (type == "plus" || type == "plus-i") {
    return twotime::superposition_measurement(size_from_json(field(j, "r"), "r"), size_from_json(field(j, "s"), "s"),
                                              type == "plus-i", in, out, reprepare);
  }
  if (type == "discard") return twotime::discard_and_randomize(in, out);
  fail("unknown measurement type '" + type + "'");
}

twotime::PartyStrategy party_from_json(const json& j, const std::string& p, const twotime::LabeledTensor& eta) {
  auto dim_of = [&](const std::string& w) -> std::size_t {
    for (const auto& i : eta.indices())
      if (i.wire == w) return i.dim;
    throw Error(ErrorKind::WrongWireSet, "state has no wire " + w);
  };
  const twotime::Wire in{p + "1", dim_of(p + "1")}, lab{p + "2", dim_of(p + "3")}, out{p + "3", dim_of(p + "3")};
  twotime::PartyStrategy s{measurement_from_json(field(j, "measurement"), in, lab), {}, {}};
  const json& chans = field(j, "channels");
  if (!chans.is_array() || chans.empty()) fail("channels must be a non-empty array");
  for (const auto& c : chans) {
    if (!c.is_string()) fail("channel entries must be names");
    const std::string name = c.get<std::string>();
    if (name == "T") {
      s.channels.push_back(twotime::throw_away_replace(lab.name, out.name, lab.dim, out.dim));
    } else {
      s.channels.push_back(twotime::unitary_channel(twotime::named_unitary(name, out.dim), lab, out));
    }
    s.channel_names.push_back(name);
  }
  return s;
}

}  // namespace

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_number_float()) fail("floating-point value " + j.dump() + " where an exact rational is required");
  fail("expected a rational, got " + j.dump());
}

json behavior_to_json(const Behavior& b) {
  const Scenario& s = b.scenario();
  std::vector<std::size_t> dims = s.inputs();
  dims.insert(dims.end(), s.outputs().begin(), s.outputs().end());
  std::size_t pos = 0;
  return {{"scenario", {{"outputs", s.outputs()}, {"inputs", s.inputs()}}}, {"p", nest(b.table(), dims, 0, pos)}};
}

Behavior behavior_from_json(const json& j) {
  const json& sc = field(j, "scenario");
  const Scenario s(sizes_from_json(field(sc, "outputs"), "outputs"), sizes_from_json(field(sc, "inputs"), "inputs"));
  std::vector<std::size_t> dims = s.inputs();
  dims.insert(dims.end(), s.outputs().begin(), s.outputs().end());
  RationalVector flat;
  flatten(field(j, "p"), dims, 0, flat);
  return Behavior(s, std::move(flat));
}

json hpolytope_to_json(const constraints::HPolytope& h) {
  json eq = json::array(), geq = json::array();
  for (const auto& c : h.equalities()) eq.push_back(constraint_to_json(c));
  for (const auto& c : h.inequalities()) geq.push_back(constraint_to_json(c));
  return {{"dim", h.ambient_dim()}, {"eq", eq}, {"geq", geq}};
}

constraints::HPolytope hpolytope_from_json(const json& j) {
  const std::size_t dim = size_from_json(field(j, "dim"), "dim");
  std::vector<constraints::LinearConstraint> eq, geq;
  if (j.contains("eq"))
    for (const auto& c : j.at("eq")) eq.push_back(constraint_from_json(c, constraints::Relation::Eq));
  if (j.contains("geq"))
    for (const auto& c : j.at("geq")) geq.push_back(constraint_from_json(c, constraints::Relation::Geq));
  return constraints::HPolytope(dim, std::move(eq), std::move(geq));
}

json vpolytope_to_json(const geometry::VPolytope& v) {
  json verts = json::array();
  for (const auto& p : v.vertices) verts.push_back(vector_to_json(p));
  return {{"dim", v.ambient_dim}, {"vertices", verts}};
}

geometry::VPolytope vpolytope_from_json(const json& j) {
  geometry::VPolytope v;
  v.ambient_dim = size_from_json(field(j, "dim"), "dim");
  for (const auto& p : field(j, "vertices")) {
    v.vertices.push_back(vector_from_json(p));
    if (v.vertices.back().size() != v.ambient_dim) fail("vertex length differs from dim");
  }
  return v;
}

json certificate_to_json(const geometry::MembershipCertificate& c) {
  json out = {{"member", c.member}};
  if (c.member && !c.weights.empty()) {
    json w = json::object();
    for (const auto& [i, q] : c.weights) w[std::to_string(i)] = rational_to_json(q);
    out["weights"] = w;
  }
  if (c.separator) {
    out["separator"] = {{"coeffs", vector_to_json(c.separator->coeffs)}, {"rhs", rational_to_json(c.separator->rhs)}};
  }
  return out;
}

json vertex_to_json(const catalog::ClassicalVertex& v) {
  json out = {{"family", std::string(catalog::kind_name(v.kind))}};
  switch (v.kind) {
    case catalog::ClassicalVertex::Kind::BothConst:
      out["alpha"] = v.alpha;
      out["beta"] = v.beta;
      break;
    case catalog::ClassicalVertex::Kind::ABeforeB:
      out["alpha"] = v.alpha;
      out["beta_x"] = v.beta_x;
      break;
    case catalog::ClassicalVertex::Kind::BBeforeA:
      out["alpha_y"] = v.alpha_y;
      out["beta"] = v.beta;
      break;
  }
  return out;
}

catalog::ClassicalVertex vertex_from_json(const json& j) {
  catalog::ClassicalVertex v;
  v.kind = catalog::parse_kind(field(j, "family").get<std::string>());
  switch (v.kind) {
    case catalog::ClassicalVertex::Kind::BothConst:
      v.alpha = size_from_json(field(j, "alpha"), "alpha");
      v.beta = size_from_json(field(j, "beta"), "beta");
      break;
    case catalog::ClassicalVertex::Kind::ABeforeB:
      v.alpha = size_from_json(field(j, "alpha"), "alpha");
      v.beta_x = sizes_from_json(field(j, "beta_x"), "beta_x");
      break;
    case catalog::ClassicalVertex::Kind::BBeforeA:
      v.alpha_y = sizes_from_json(field(j, "alpha_y"), "alpha_y");
      v.beta = size_from_json(field(j, "beta"), "beta");
      break;
  }
  return v;
}

json decomposition_to_json(const decomposer::ConvexDecomposition& d, bool with_trace) {
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back({{"w", rational_to_json(t.weight)}, {"vertex", vertex_to_json(t.vertex)}});
  json out = {{"terms", terms}};
  if (with_trace) {
    json trace = json::array();
    for (const auto& s : d.trace) {
      trace.push_back({{"a", s.a},
                       {"b", s.b},
                       {"x", s.x},
                       {"y", s.y},
                       {"epsilon", rational_to_json(s.epsilon)},
                       {"case", decomposer::case_name(s.peel_case)},
                       {"vertex", vertex_to_json(s.vertex)},
                       {"zero_count", s.zero_count}});
    }
    out["trace"] = trace;
  }
  return out;
}

decomposer::ConvexDecomposition decomposition_from_json(const json& j) {
  decomposer::ConvexDecomposition d;
  for (const auto& t : field(j, "terms")) {
    d.terms.push_back({rational_from_json(field(t, "w")), vertex_from_json(field(t, "vertex"))});
  }
  return d;
}

json nbts_report_to_json(const NbtsReport& r) {
  json v = json::array();
  for (const auto& e : r.violations) {
    v.push_back({{"party", e.party},
                 {"output", e.output},
                 {"inputs", e.inputs},
                 {"reference_inputs", e.reference_inputs},
                 {"lhs", rational_to_json(e.lhs)},
                 {"rhs", rational_to_json(e.rhs)}});
  }
  return {{"holds", r.holds}, {"violations", v}};
}

json classicality_report_to_json(const ClassicalityReport& r) {
  json v = json::array();
  for (const auto& e : r.violations) {
    v.push_back({{"a", e.a},
                 {"b", e.b},
                 {"x", e.x},
                 {"x_prime", e.x_prime},
                 {"y", e.y},
                 {"y_prime", e.y_prime},
                 {"lhs", rational_to_json(e.lhs)},
                 {"rhs", rational_to_json(e.rhs)}});
  }
  return {{"holds", r.holds}, {"violations", v}};
}

json tensor_to_json(const twotime::LabeledTensor& t) {
  json idx = json::array(), re = json::array(), im = json::array();
  for (const auto& i : t.indices()) {
    idx.push_back({{"wire", i.wire},
                   {"side", i.side == twotime::Side::Ket ? "ket" : "bra"},
                   {"var", i.var == twotime::Variance::Up ? "up" : "down"},
                   {"dim", i.dim}});
  }
  for (const auto& e : t.entries()) {
    re.push_back(e.real());
    im.push_back(e.imag());
  }
  return {{"indices", idx}, {"re", re}, {"im", im}};
}

twotime::LabeledTensor tensor_from_json(const json& j) {
  std::vector<twotime::WireIndex> idx;
  for (const auto& i : field(j, "indices")) {
    twotime::WireIndex w;
    w.wire = field(i, "wire").get<std::string>();
    const std::string side = field(i, "side").get<std::string>();
    const std::string var = field(i, "var").get<std::string>();
    if (side != "ket" && side != "bra") fail("side must be ket or bra");
    if (var != "up" && var != "down") fail("var must be up or down");
    w.side = side == "ket" ? twotime::Side::Ket : twotime::Side::Bra;
    w.var = var == "up" ? twotime::Variance::Up : twotime::Variance::Down;
    w.dim = size_from_json(field(i, "dim"), "dim");
    idx.push_back(std::move(w));
  }
  const json& re = field(j, "re");
  if (!re.is_array()) fail("re must be an array");
  std::vector<twotime::Complex> entries;
  for (const auto& v : re) {
    if (!v.is_number()) fail("tensor entries must be numbers");
    entries.emplace_back(v.get<double>(), 0.0);
  }
  if (j.contains("im")) {
    const json& im = j.at("im");
    if (!im.is_array() || im.size() != entries.size()) fail("im must match re in length");
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (!im[k].is_number()) fail("tensor entries must be numbers");
      entries[k].imag(im[k].get<double>());
    }
  }
  return twotime::LabeledTensor(std::move(idx), std::move(entries));
}

StrategyPair strategies_from_json(const json& j, const twotime::LabeledTensor& eta) {
  try {
    return {party_from_json(field(j, "alice"), "A", eta), party_from_json(field(j, "bob"), "B", eta)};
  } catch (const json::exception& e) {
    fail(std::string("strategy: ") + e.what());
  }
}

json witness_to_json(const twotime::WitnessReport& r) {
  return {{"nbts", r.nbts},
          {"worst_deviation", r.worst_deviation},
          {"witness",
           {{"measurement", r.measurement},
            {"outcome", r.outcome},
            {"channel_x", r.channel_x},
            {"channel_x_prime", r.channel_x_prime}}},
          {"evaluated", r.evaluated},
          {"skipped", r.skipped}};
}

json structural_to_json(const twotime::StructuralReport& r, twotime::StructuralForm form) {
  json out = {{"form", std::string(twotime::form_name(form))}, {"matches", r.matches}, {"residual", r.residual}};
  if (r.matches) out["extracted"] = tensor_to_json(r.extracted);
  return out;
}

json linearity_to_json(const twotime::LinearityReport& r) {
  return {{"linear", r.linear},
          {"residuals", {{"lin1", r.residuals[0]}, {"lin2", r.residuals[1]}, {"lin3", r.residuals[2]}, {"lin4", r.residuals[3]}}}};
}

json float_behavior_to_json(const twotime::FloatBehavior& b) {
  std::vector<std::size_t> dims = b.scenario.inputs();
  dims.insert(dims.end(), b.scenario.outputs().begin(), b.scenario.outputs().end());
  // reuse the nesting with doubles
  std::function<json(std::size_t, std::size_t&)> build = [&](std::size_t level, std::size_t& pos) -> json {
    if (level == dims.size()) return b.p[pos++];
    json arr = json::array();
    for (std::size_t k = 0; k < dims[level]; ++k) arr.push_back(build(level + 1, pos));
    return arr;
  };
  std::size_t pos = 0;
  return {{"scenario", {{"outputs", b.scenario.outputs()}, {"inputs", b.scenario.inputs()}}},
          {"p", build(0, pos)},
          {"max_imag", b.max_imag}};
}

}  // namespace nbts::io
