#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qowf/classical/function.h"
#include "qowf/inverters/inverter.h"

namespace qowf {

inline constexpr int kSchemaVersion = 1;

/// Command-line flags; set values win over the config file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
};

struct ExperimentOutcome {
    nlohmann::json report;
    bool passed = true;  // false when an assertion-style check failed
    std::vector<std::string> summary;
};

/// Reads and parses a JSON file; parse errors name `field`.
nlohmann::json load_json(const std::filesystem::path& path, const std::string& field);

/// A function reference is a path (relative to base_dir), an inline
/// {"n","m","table"} object, {"zoo": name}, or {"builtin": generator, ...}.
ClassicalFunction resolve_function(const nlohmann::json& ref, const std::filesystem::path& base_dir,
                                   const std::string& field);

InverterSpec parse_inverter(const nlohmann::json& desc, const ClassicalFunction& f,
                            std::uint64_t seed, const std::string& field);

/// Subcommands: sample, invert, reduce, il, sd, verify.
ExperimentOutcome run_experiment(const std::string& command, const nlohmann::json& config,
                                 const std::filesystem::path& base_dir,
                                 const Overrides& overrides = {});

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// {"error": {"kind", "field", "message"}}
nlohmann::json error_json(const std::string& kind, const std::string& field,
                          const std::string& message);

}  // namespace qowf
