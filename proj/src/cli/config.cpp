#include "bsrd/config.hpp"

#include <fstream>
#include <set>

#include "bsrd/error.hpp"
#include "bsrd/model_json.hpp"

namespace bsrd {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Config, field + ": " + what);
}

std::uint64_t unsigned_field(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) config_error(key, "expected a non-negative integer");
  if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0) config_error(key, "must be non-negative");
  return v.get<std::uint64_t>();
}

}  // namespace

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) config_error("config", "expected an object");
  static const std::set<std::string> allowed{"schema_version", "model",   "switch",    "n",
                                             "replicates",     "seed",    "options", "output_dir"};
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) config_error(key, "unknown field");
  }
  for (const char* key : {"schema_version", "model", "switch", "n"}) {
    if (!j.contains(key)) config_error(key, "required field missing");
  }

  RunConfig c;
  const std::uint64_t version = unsigned_field(j, "schema_version");
  if (version != static_cast<std::uint64_t>(kSchemaVersion)) {
    config_error("schema_version", "unsupported version " + std::to_string(version) +
                                       " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  c.schema_version = kSchemaVersion;
  c.model = model_from_json(j.at("model"), "model");
  c.switch_model = switch_from_json(j.at("switch"), "switch");
  c.n = unsigned_field(j, "n");
  if (c.n == 0) config_error("n", "must be >= 1");
  if (j.contains("replicates")) {
    c.replicates = unsigned_field(j, "replicates");
    if (c.replicates == 0) config_error("replicates", "must be >= 1");
  }
  if (j.contains("seed")) c.seed = unsigned_field(j, "seed");
  if (j.contains("options")) {
    if (!j.at("options").is_object()) config_error("options", "expected an object");
    c.options = j.at("options");
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) config_error("output_dir", "expected a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  (void)c.process();
  return c;
}

json config_to_json(const RunConfig& c) {
  json j{{"schema_version", c.schema_version},
         {"model", model_to_json(c.model)},
         {"switch", switch_to_json(c.switch_model)},
         {"n", c.n},
         {"replicates", c.replicates},
         {"seed", c.seed},
         {"options", c.options}};
  if (!c.output_dir.empty()) j["output_dir"] = c.output_dir;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error(path, "cannot open config file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error(path, std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

}  // namespace bsrd
