#include "qowf/classical/function_json.h"

#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

nlohmann::json function_to_json(const ClassicalFunction& f) {
    nlohmann::json table = nlohmann::json::array();
    for (auto y : f.table()) {
        table.push_back(format_bits(y, f.m()));
    }
    return {{"n", f.n()}, {"m", f.m()}, {"table", std::move(table)}};
}

ClassicalFunction function_from_json(const nlohmann::json& j) {
    require(j.is_object(), "function must be a JSON object", "function");
    for (const auto& [key, value] : j.items()) {
        require(key == "n" || key == "m" || key == "table", "unknown field '" + key + "'", key);
    }
    for (const char* key : {"n", "m", "table"}) {
        require(j.contains(key), std::string("missing field '") + key + "'", key);
    }
    require(j["n"].is_number_integer(), "'n' must be an integer", "n");
    require(j["m"].is_number_integer(), "'m' must be an integer", "m");
    require(j["table"].is_array(), "'table' must be an array", "table");
    auto n = j["n"].get<std::int64_t>();
    auto m = j["m"].get<std::int64_t>();
    require(n >= 0 && n <= kMaxInputBits, "'n' out of range", "n");
    require(m >= 1 && m <= kMaxOutputBits, "'m' out of range", "m");
    const auto& rows = j["table"];
    require(rows.size() == (std::size_t{1} << n), "'table' must have 2^n entries", "table");
    std::vector<std::uint64_t> table;
    table.reserve(rows.size());
    for (std::size_t x = 0; x < rows.size(); ++x) {
        std::string field = "table[" + std::to_string(x) + "]";
        require(rows[x].is_string(), "table entries must be bit-strings", field);
        table.push_back(parse_bits(rows[x].get<std::string>(), static_cast<int>(m), field));
    }
    return ClassicalFunction(static_cast<int>(n), static_cast<int>(m), std::move(table));
}

}  // namespace qowf
