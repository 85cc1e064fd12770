#pragma once

#include <string>

#include <json.hpp>

#include "tla/analysis.hpp"
#include "tla/instance.hpp"
#include "tla/outcome.hpp"
#include "tla/rational.hpp"

namespace tla {

using Json = nlohmann::json;

// Instance file schema, version 1:
// {
//   "version": 1,
//   "model": "single-item" | "additive" | "unit-demand",
//   "items": m,
//   "groups": [ { "name": "...", "bidders": [ { "values": ["p/q", ...] }, ... ] }, ... ]
// }
// Rationals travel as strings ("p/q", integers, or decimals with at most
// nine fractional digits) and are parsed exactly; item and bidder indices in
// every external format are 1-based.
Instance instance_from_json(const Json& doc);
Instance parse_instance(const std::string& text);
Json instance_to_json(const Instance& instance);
std::string serialize_instance(const Instance& instance);

// Parses a rational string or throws ParseError mentioning `context`.
Rational parse_rational(const std::string& text, const std::string& context);

Json outcome_to_json(const Outcome& outcome);
// Replay path: reads an outcome without enforcing mechanism invariants so
// checkers can judge it.
Outcome outcome_from_json(const Instance& instance, const Json& doc);

Json violation_to_json(const ViolationReport& report);

}  // namespace tla
