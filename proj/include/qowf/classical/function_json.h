#pragma once

#include <json.hpp>

#include "qowf/classical/function.h"

namespace qowf {

/// {"n": int, "m": int, "table": ["bits", ...]} with one m-bit string per
/// input, in input order.
nlohmann::json function_to_json(const ClassicalFunction& f);

/// Strict inverse of function_to_json. Errors name the offending field.
ClassicalFunction function_from_json(const nlohmann::json& j);

}  // namespace qowf
