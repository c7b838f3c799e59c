#include "flexgraph/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "flexgraph/error.hpp"

namespace flexgraph {

Json rational_to_json(const Rational& value) {
  if (is_integer(value) && value.get_num().fits_slong_p()) return Json(value.get_num().get_si());
  return Json(format_rational(value));
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer()) {
    return value.is_number_unsigned() ? Rational(mpz_class(std::to_string(value.get<std::uint64_t>())))
                                      : Rational(mpz_class(std::to_string(value.get<std::int64_t>())));
  }
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_float()) {
    throw Error(ErrorCode::ParseError, "write non-integer rates as strings such as \"1/3\"",
                value.dump());
  }
  throw Error(ErrorCode::ParseError, "expected a number or rational string", value.dump());
}

Json edge_to_json(const Edge& e) { return Json::array({e.demand, e.supply}); }

Edge edge_from_json(const Json& value) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
      !value[1].is_number_integer()) {
    throw Error(ErrorCode::ParseError, "an edge is a pair [demand, supply]", value.dump());
  }
  return Edge{value[0].get<int>(), value[1].get<int>()};
}

Json edges_to_json(const EdgeSet& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back(edge_to_json(e));
  return out;
}

EdgeSet edges_from_json(const Json& value) {
  if (!value.is_array()) throw Error(ErrorCode::ParseError, "edges must be an array", value.dump());
  EdgeSet out;
  for (const auto& item : value) {
    const Edge e = edge_from_json(item);
    if (!out.insert(e).second) throw Error(ErrorCode::DuplicateEdge, "edge listed twice", to_string(e));
  }
  return out;
}

Json instance_to_json(const ProblemInstance& inst) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  Json demand = Json::array();
  for (const auto& v : inst.demands()) demand.push_back(rational_to_json(v));
  Json supply = Json::array();
  for (const auto& v : inst.supplies()) supply.push_back(rational_to_json(v));
  doc["demand"] = std::move(demand);
  doc["supply"] = std::move(supply);
  doc["edges"] = edges_to_json(inst.edges());
  return doc;
}

namespace {

std::vector<Rational> rates(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw Error(ErrorCode::ParseError, std::string("missing array \"") + key + "\"");
  }
  std::vector<Rational> out;
  for (const auto& v : doc[key]) out.push_back(rational_from_json(v));
  return out;
}

}  // namespace

ProblemInstance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "instance must be a JSON object");
  if (doc.contains("schema_version") &&
      (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion)) {
    throw Error(ErrorCode::ParseError, "unsupported schema_version", doc["schema_version"].dump());
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw Error(ErrorCode::ParseError, "edges must be an array");
    for (const auto& item : doc["edges"]) edges.push_back(edge_from_json(item));
  }
  return ProblemInstance::create(rates(doc, "demand"), rates(doc, "supply"), edges);
}

Json assignment_to_json(const Assignment& x) {
  Json out = Json::array();
  for (const auto& [e, v] : x.entries()) {
    out.push_back(Json::array({e.demand, e.supply, format_rational(v)}));
  }
  return out;
}

Assignment assignment_from_json(const Json& value) {
  if (!value.is_array()) throw Error(ErrorCode::ParseError, "assignment must be an array");
  Assignment x;
  for (const auto& item : value) {
    if (!item.is_array() || item.size() != 3) {
      throw Error(ErrorCode::ParseError, "assignment entries are [demand, supply, value]", item.dump());
    }
    const Edge e = edge_from_json(Json::array({item[0], item[1]}));
    const Rational v = rational_from_json(item[2]);
    if (sgn(v) < 0) throw Error(ErrorCode::ParseError, "negative assignment entry", item.dump());
    x.add(e, v);
  }
  return x;
}

Json read_json(const std::string& path) {
  std::stringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open file", path);
    buffer << in.rdbuf();
  }
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what(), path);
  }
}

ProblemInstance read_instance(const std::string& path) { return instance_from_json(read_json(path)); }

}  // namespace flexgraph
