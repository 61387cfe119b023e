#pragma once

#include <json.hpp>

#include "bsrd/model.hpp"
#include "bsrd/process.hpp"

namespace bsrd {

// JSON forms of the model specifications. Parsing is strict: unknown fields,
// missing fields, and wrong types throw Error(Config) naming the field.

nlohmann::json model_to_json(const DependenceModel& model);
nlohmann::json switch_to_json(const SwitchModel& sw);
nlohmann::json process_to_json(const BsrdProcess& proc);

DependenceModel model_from_json(const nlohmann::json& j, const std::string& where = "model");
SwitchModel switch_from_json(const nlohmann::json& j, const std::string& where = "switch");

}  // namespace bsrd
