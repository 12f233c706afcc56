#pragma once

#include <nlohmann/json.hpp>

#include "nbts/behavior.hpp"
#include "nbts/constraints.hpp"
#include "nbts/decomposer.hpp"
#include "nbts/geometry.hpp"
#include "nbts/twotime/analysis.hpp"

namespace nbts::io {

using nlohmann::json;

/// Rationals are strings ("1/2"); plain integers are also accepted on input.
/// Floating-point numbers are rejected with ParseError.
json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

/// {"scenario":{"outputs":[..],"inputs":[..]},"p":[x][y]..[a][b]..}
json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const json& j);

/// {"dim":n,"eq":[{"c":{"3":"1"},"rhs":"0"}],"geq":[...]}
json hpolytope_to_json(const constraints::HPolytope& h);
constraints::HPolytope hpolytope_from_json(const json& j);

/// {"dim":n,"vertices":[["1","0",...],...]}
json vpolytope_to_json(const geometry::VPolytope& v);
geometry::VPolytope vpolytope_from_json(const json& j);

json certificate_to_json(const geometry::MembershipCertificate& c);

json vertex_to_json(const catalog::ClassicalVertex& v);
catalog::ClassicalVertex vertex_from_json(const json& j);
json decomposition_to_json(const decomposer::ConvexDecomposition& d, bool with_trace);
decomposer::ConvexDecomposition decomposition_from_json(const json& j);

json nbts_report_to_json(const NbtsReport& r);
json classicality_report_to_json(const ClassicalityReport& r);

/// {"indices":[{"wire":"A1","side":"ket","var":"up","dim":2},...],"re":[...],"im":[...]}
json tensor_to_json(const twotime::LabeledTensor& t);
twotime::LabeledTensor tensor_from_json(const json& j);

/// Strategy file: {"alice":{"measurement":{...},"channels":["I","X"]},"bob":{...}}.
/// Measurement types: computational, plus, plus-i (with "r", "s"), discard;
/// "reprepare": k re-prepares |k>, absent or null keeps the projected state.
/// Channels: unitary names accepted by named_unitary, or "T".
struct StrategyPair {
  twotime::PartyStrategy alice;
  twotime::PartyStrategy bob;
};
StrategyPair strategies_from_json(const json& j, const twotime::LabeledTensor& eta);

json witness_to_json(const twotime::WitnessReport& r);
json structural_to_json(const twotime::StructuralReport& r, twotime::StructuralForm form);
json linearity_to_json(const twotime::LinearityReport& r);
json float_behavior_to_json(const twotime::FloatBehavior& b);

/// Parses text; syntax errors become Error(ParseError).
json parse(std::string_view text);

}  // namespace nbts::io
