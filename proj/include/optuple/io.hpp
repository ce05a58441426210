#pragma once

#include <string>

#include <json.hpp>

#include "optuple/theorems.hpp"

namespace optuple::io {

using nlohmann::json;

/// Parses an instance document. Every failure throws ParseError carrying the
/// JSON pointer of the offending node.
Instance parse_instance(const json& doc);
Instance parse_instance_text(const std::string& text);

json instance_to_json(const Instance& inst);

json to_json(const Vector& v);
json to_json(const NormResult& r);
json to_json(const AttainmentSet& s);
json to_json(const DistanceResult& r);
json to_json(const SingerCertificate& c);
json to_json(const BJDecision& d);
json to_json(const GateauxPair& g);
json to_json(const SmoothnessReport& r);
json to_json(const JointAttainment& j);
json to_json(const CheckReport& r);
json to_json(const SuiteSummary& s);

/// Aligned key/value rendering of a report document for terminals.
std::string render_text(const json& doc);

}  // namespace optuple::io
