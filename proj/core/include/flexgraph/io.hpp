#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "flexgraph/instance.hpp"

namespace flexgraph {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Integers as JSON numbers, everything else as "p/q" text.
Json rational_to_json(const Rational& value);
/// Accepts JSON integers and rational or decimal strings. Non-integer JSON
/// numbers are refused because they are not exact. Throws ParseError.
Rational rational_from_json(const Json& value);

Json edge_to_json(const Edge& e);
Edge edge_from_json(const Json& value);
Json edges_to_json(const EdgeSet& edges);
EdgeSet edges_from_json(const Json& value);

/// {"schema_version", "demand", "supply", "edges"}; "edges" may be omitted.
Json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const Json& doc);

/// [[i, j, value], ...] in edge order.
Json assignment_to_json(const Assignment& x);
Assignment assignment_from_json(const Json& value);

/// Reads and parses a JSON file; "-" means standard input. Throws IoError,
/// ParseError.
Json read_json(const std::string& path);
ProblemInstance read_instance(const std::string& path);

}  // namespace flexgraph
