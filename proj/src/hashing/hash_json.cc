#include "qowf/hashing/hash_json.h"

#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

nlohmann::json hash_to_json(const ToeplitzAffineHash& h) {
    return {{"n", h.n()},
            {"k", h.k()},
            {"diag", format_bits(h.diag(), h.n() + h.k() - 1)},
            {"offset", format_bits(h.offset(), h.k())}};
}

ToeplitzAffineHash hash_from_json(const nlohmann::json& j) {
    require(j.is_object(), "hash must be a JSON object", "hash");
    for (const auto& [key, value] : j.items()) {
        require(key == "n" || key == "k" || key == "diag" || key == "offset",
                "unknown field '" + key + "'", key);
    }
    for (const char* key : {"n", "k", "diag", "offset"}) {
        require(j.contains(key), std::string("missing field '") + key + "'", key);
    }
    require(j["n"].is_number_integer(), "'n' must be an integer", "n");
    require(j["k"].is_number_integer(), "'k' must be an integer", "k");
    require(j["diag"].is_string(), "'diag' must be a bit-string", "diag");
    require(j["offset"].is_string(), "'offset' must be a bit-string", "offset");
    int n = j["n"].get<int>();
    int k = j["k"].get<int>();
    require(n >= 1 && n <= kMaxInputBits, "'n' out of range", "n");
    require(k >= 1 && k <= 31, "'k' out of range", "k");
    auto diag = parse_bits(j["diag"].get<std::string>(), n + k - 1, "diag");
    auto offset = parse_bits(j["offset"].get<std::string>(), k, "offset");
    return ToeplitzAffineHash(n, k, diag, offset);
}

}  // namespace qowf
