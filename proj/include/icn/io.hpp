#pragma once

#include <string>
#include <variant>

#include "json.hpp"

#include "icn/index_code.hpp"
#include "icn/matroid.hpp"
#include "icn/netcode.hpp"
#include "icn/reduce.hpp"
#include "icn/solve.hpp"

// JSON forms of every object. Messages, clients' side sets, edges, nodes and
// matroid elements are 1-based in files; a missing edge endpoint is null.
// Schema violations raise MalformedInput.

namespace icn::io {

using json = nlohmann::ordered_json;

json parse(const std::string& text);
json load(const std::string& path);

FieldPtr field_from_json(const json& j);
json to_json(const Field& f);

Matrix matrix_from_json(const json& j, const FieldPtr& field);
json to_json(const Matrix& m);

IndexInstance instance_from_json(const json& j);
json to_json(const IndexInstance& inst);

/// {"c", "L"} or {"c", "table": {"outputs"}}; field and n default to the
/// instance's.
using IndexCode = std::variant<LinearIndexCode, TableCode>;
IndexCode index_code_from_json(const json& j, const IndexInstance& inst);
json to_json(const LinearIndexCode& code);
json to_json(const TableCode& code);

Matroid matroid_from_json(const json& j);
json to_json(const Matroid& mat);

Representation representation_from_json(const json& j);
json to_json(const Representation& rep);

/// Edges are written in the caller's original order, the order network
/// codes use in files.
NetworkInstance network_from_json(const json& j);
json to_json(const NetworkInstance& net);

/// {"field", "n", "F": [...]} (linear) or {"field", "n", "f": [[...]]}
/// (tables); entries follow the file's edge order.
using NetCode = std::variant<NetworkCode, NetworkTableCode>;
NetCode network_code_from_json(const json& j, const NetworkInstance& net);
json to_json(const NetworkInstance& net, const NetworkCode& code);

json to_json(const ReductionTrace& trace);
json to_json(const Client& cl);

std::string status_name(SearchStatus s);
json to_json(const RateReport& rep);

} // namespace icn::io
