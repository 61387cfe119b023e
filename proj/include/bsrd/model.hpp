#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace bsrd {

/// A per-index parameter that is either constant or an explicit table.
/// Tables are indexed from i = 1: values()[0] is the value at i = 1.
class ParamSeq {
 public:
  ParamSeq() : constant_(0.0) {}
  static ParamSeq constant(double value);
  static ParamSeq table(std::vector<double> values);

  /// Value at index i >= 1; throws Error(MissingParameter) past the table.
  double at(std::size_t i, std::string_view name) const;

  bool is_constant() const noexcept { return constant_.has_value(); }
  double constant_value() const { return *constant_; }
  const std::vector<double>& values() const noexcept { return table_; }

  /// Number of explicit entries, or nullopt for a constant.
  std::optional<std::size_t> size() const noexcept;

 private:
  std::optional<double> constant_;
  std::vector<double> table_;
};

namespace family {

/// P_i(s) = p + beta s.
struct Contagious {
  double p;
  double beta;
};

/// P_i(s) = (1 - theta) p + theta s / i.
struct GeneralizedBinomial {
  double p;
  double theta;
};

/// P_i(s) = p / (a i + 1) + a s / (a i + 1).
struct BetaBinomial {
  double p;
  double a;
};

/// P_i(s) = logistic(a + b s).
struct IncrementalRisk {
  double a;
  double b;
};

/// P_i(s) = alpha_i + beta_i s / i, P(X_1 = 1) = alpha0.
struct Linear {
  double alpha0;
  ParamSeq alpha;
  ParamSeq beta;
};

/// Correlated random walk: P_i(s) = (1 - mu i / (i + l)) / 2 + mu s / (i + l).
struct CorrelatedRW {
  double mu;
  double l;
};

/// table[i][s] = P_i(s) for 0 <= s <= i; table[0][0] is P(X_1 = 1).
struct Custom {
  std::vector<std::vector<double>> table;
};

}  // namespace family

using DependenceModel =
    std::variant<family::Contagious, family::GeneralizedBinomial, family::BetaBinomial,
                 family::IncrementalRisk, family::Linear, family::CorrelatedRW, family::Custom>;

namespace switching {

struct IID {
  double lambda;
};

/// Bern(a, b): lambda_i = a / (a + b + i - 1).
struct PoissonTrials {
  double a;
  double b;
};

/// lambdas[0] is lambda_1.
struct Explicit {
  std::vector<double> lambdas;
};

}  // namespace switching

using SwitchModel = std::variant<switching::IID, switching::PoissonTrials, switching::Explicit>;

std::string_view family_name(const DependenceModel& model);
std::string_view switch_name(const SwitchModel& sw);

/// Probability of the first trial, P(X_1 = 1).
double initial_prob(const DependenceModel& model);

/// P_i(s); i = 0 gives the first-trial probability. Throws
/// Error(ParameterViolation) naming (i, s) when the value leaves [0, 1], and
/// Error(Domain) when s > i.
double dependence_prob(const DependenceModel& model, std::size_t i, std::size_t s);

/// lambda_i for i >= 1.
double switch_prob(const SwitchModel& sw, std::size_t i);

/// lambda_1 .. lambda_n, element k holding lambda_{k+1}.
std::vector<double> switch_probs(const SwitchModel& sw, std::size_t n);

/// Enforces the family's parameter restrictions against the horizon and
/// P_i(s) in [0, 1] for all 0 <= s <= i < horizon. All families are monotone
/// in s, so the check evaluates s = 0 and s = i only (Custom rows in full).
void validate_model(const DependenceModel& model, std::size_t horizon);

/// lambda_i in [0, 1] for 1 <= i <= horizon.
void validate_switch(const SwitchModel& sw, std::size_t horizon);

/// Bern(1, b) detection used to route closed forms.
std::optional<double> bern_one_b(const SwitchModel& sw);

}  // namespace bsrd
