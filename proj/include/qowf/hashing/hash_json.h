#pragma once

#include <json.hpp>

#include "qowf/hashing/toeplitz.h"

namespace qowf {

/// {"n": int, "k": int, "diag": "bits", "offset": "bits"}; diag is written as
/// an (n+k-1)-bit numeral, so its last character is diag[0].
nlohmann::json hash_to_json(const ToeplitzAffineHash& h);
ToeplitzAffineHash hash_from_json(const nlohmann::json& j);

}  // namespace qowf
