#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "bsrd/model.hpp"
#include "bsrd/process.hpp"

namespace bsrd {

inline constexpr int kSchemaVersion = 1;

/// Run description. JSON form:
///   {"schema_version": 1, "model": {...}, "switch": {...}, "n": N,
///    "replicates": R, "seed": U64, "options": {...}, "output_dir": "..."}
/// schema_version, model, switch and n are required; unknown fields are rejected.
struct RunConfig {
  int schema_version = kSchemaVersion;
  DependenceModel model;
  SwitchModel switch_model;
  std::size_t n = 0;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  nlohmann::json options = nlohmann::json::object();  // subcommand options, passed through
  std::string output_dir;                              // empty: standard output

  /// Validates both models against horizon n.
  BsrdProcess process() const { return BsrdProcess(model, switch_model, n); }
};

/// Parses and validates; model constraints are enforced by building the process.
/// Throws Error(Config) naming the field, or the core validation error.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& config);

/// Throws Error(Config) if the file is missing or is not valid JSON.
RunConfig load_config(const std::string& path);

}  // namespace bsrd
