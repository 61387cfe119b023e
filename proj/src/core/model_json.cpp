#include "bsrd/model_json.hpp"

#include <set>
#include <string>

#include "bsrd/error.hpp"

namespace bsrd {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Config, field + ": " + what);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) config_error(where, "expected an object");
}

void only_fields(const json& j, const std::string& where, std::set<std::string> allowed) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) config_error(where + "." + key, "unknown field");
  }
}

double number(const json& j, const std::string& where, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) config_error(where + "." + key, "required field missing");
  if (!it->is_number()) config_error(where + "." + key, "expected a number");
  return it->get<double>();
}

std::vector<double> number_array(const json& j, const std::string& field) {
  if (!j.is_array()) config_error(field, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) config_error(field + "[" + std::to_string(k) + "]", "expected a number");
    out.push_back(j[k].get<double>());
  }
  return out;
}

ParamSeq param_seq(const json& j, const std::string& where, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) config_error(where + "." + key, "required field missing");
  if (it->is_number()) return ParamSeq::constant(it->get<double>());
  if (it->is_array()) return ParamSeq::table(number_array(*it, where + "." + key));
  config_error(where + "." + key, "expected a number or an array indexed from i=1");
}

json param_seq_json(const ParamSeq& seq) {
  if (seq.is_constant()) return seq.constant_value();
  return seq.values();
}

std::string tag(const json& j, const std::string& where, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) config_error(where + "." + key, "required field missing");
  if (!it->is_string()) config_error(where + "." + key, "expected a string");
  return it->get<std::string>();
}

}  // namespace

json model_to_json(const DependenceModel& model) {
  json j = std::visit(
      Overloaded{
          [](const family::Contagious& m) { return json{{"p", m.p}, {"beta", m.beta}}; },
          [](const family::GeneralizedBinomial& m) { return json{{"p", m.p}, {"theta", m.theta}}; },
          [](const family::BetaBinomial& m) { return json{{"p", m.p}, {"a", m.a}}; },
          [](const family::IncrementalRisk& m) { return json{{"a", m.a}, {"b", m.b}}; },
          [](const family::Linear& m) {
            return json{{"alpha0", m.alpha0},
                        {"alpha", param_seq_json(m.alpha)},
                        {"beta", param_seq_json(m.beta)}};
          },
          [](const family::CorrelatedRW& m) { return json{{"mu", m.mu}, {"l", m.l}}; },
          [](const family::Custom& m) { return json{{"table", m.table}}; },
      },
      model);
  j["family"] = std::string(family_name(model));
  return j;
}

json switch_to_json(const SwitchModel& sw) {
  json j = std::visit(Overloaded{
                          [](const switching::IID& m) { return json{{"lambda", m.lambda}}; },
                          [](const switching::PoissonTrials& m) { return json{{"a", m.a}, {"b", m.b}}; },
                          [](const switching::Explicit& m) { return json{{"lambdas", m.lambdas}}; },
                      },
                      sw);
  j["kind"] = std::string(switch_name(sw));
  return j;
}

json process_to_json(const BsrdProcess& proc) {
  return json{{"model", model_to_json(proc.dependence())},
              {"switch", switch_to_json(proc.switch_model())},
              {"horizon", proc.horizon()}};
}

DependenceModel model_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  const std::string family = tag(j, where, "family");
  if (family == "contagious") {
    only_fields(j, where, {"family", "p", "beta"});
    return family::Contagious{number(j, where, "p"), number(j, where, "beta")};
  }
  if (family == "generalized_binomial") {
    only_fields(j, where, {"family", "p", "theta"});
    return family::GeneralizedBinomial{number(j, where, "p"), number(j, where, "theta")};
  }
  if (family == "beta_binomial") {
    only_fields(j, where, {"family", "p", "a"});
    return family::BetaBinomial{number(j, where, "p"), number(j, where, "a")};
  }
  if (family == "incremental_risk") {
    only_fields(j, where, {"family", "a", "b"});
    return family::IncrementalRisk{number(j, where, "a"), number(j, where, "b")};
  }
  if (family == "linear") {
    only_fields(j, where, {"family", "alpha0", "alpha", "beta"});
    family::Linear m{0.0, param_seq(j, where, "alpha"), param_seq(j, where, "beta")};
    if (j.contains("alpha0")) {
      m.alpha0 = number(j, where, "alpha0");
    } else if (m.alpha.is_constant()) {
      m.alpha0 = m.alpha.constant_value();
    } else {
      config_error(where + ".alpha0", "required when alpha is an array");
    }
    return m;
  }
  if (family == "correlated_rw") {
    only_fields(j, where, {"family", "mu", "l"});
    return family::CorrelatedRW{number(j, where, "mu"), number(j, where, "l")};
  }
  if (family == "custom") {
    only_fields(j, where, {"family", "table"});
    const auto it = j.find("table");
    if (it == j.end()) config_error(where + ".table", "required field missing");
    if (!it->is_array()) config_error(where + ".table", "expected an array of rows");
    family::Custom m;
    for (std::size_t i = 0; i < it->size(); ++i) {
      m.table.push_back(number_array((*it)[i], where + ".table[" + std::to_string(i) + "]"));
    }
    return m;
  }
  config_error(where + ".family",
               "unknown family '" + family +
                   "' (expected contagious, generalized_binomial, beta_binomial, "
                   "incremental_risk, linear, correlated_rw, custom)");
}

SwitchModel switch_from_json(const json& j, const std::string& where) {
  require_object(j, where);
  const std::string kind = tag(j, where, "kind");
  if (kind == "iid") {
    only_fields(j, where, {"kind", "lambda"});
    return switching::IID{number(j, where, "lambda")};
  }
  if (kind == "poisson_trials") {
    only_fields(j, where, {"kind", "a", "b"});
    return switching::PoissonTrials{number(j, where, "a"), number(j, where, "b")};
  }
  if (kind == "explicit") {
    only_fields(j, where, {"kind", "lambdas"});
    const auto it = j.find("lambdas");
    if (it == j.end()) config_error(where + ".lambdas", "required field missing");
    return switching::Explicit{number_array(*it, where + ".lambdas")};
  }
  config_error(where + ".kind",
               "unknown switch kind '" + kind + "' (expected iid, poisson_trials, explicit)");
}

}  // namespace bsrd
