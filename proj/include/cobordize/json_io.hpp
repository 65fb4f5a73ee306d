#pragma once

#include <string>

#include <json.hpp>

#include "cobordize/construct.hpp"
#include "cobordize/factorize.hpp"

namespace cobordize {

using Json = nlohmann::json;

Json to_json(const Fan& f);
Json to_json(const CobordismFan& b);
Json to_json(const Move& m);
Json to_json(const FactorizationTrace& t);
Json to_json(const Polytope& p);

// Structural problems raise parse_error; semantic ones (not a fan, ...) keep their own code.
Fan fan_from_json(const Json& j);
CobordismFan cobordism_from_json(const Json& j);
Move move_from_json(const Json& j);
FactorizationTrace trace_from_json(const Json& j);
Polytope polytope_from_json(const Json& j);

Json parse_json(const std::string& text);

}  // namespace cobordize
