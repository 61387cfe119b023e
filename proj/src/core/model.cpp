#include "bsrd/model.hpp"

#include <cmath>
#include <string>

#include "bsrd/error.hpp"
#include "bsrd/format.hpp"

namespace bsrd {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void violation(const std::string& message) {
  throw Error(ErrorKind::ParameterViolation, message);
}

void require_probability(double value, const std::string& name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    violation(name + " must lie in [0, 1], got " + shortest(value));
  }
}

void require_finite(double value, const std::string& name) {
  if (!std::isfinite(value)) violation(name + " must be finite, got " + shortest(value));
}

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double raw_prob(const DependenceModel& model, std::size_t i, std::size_t s) {
  const double di = static_cast<double>(i);
  const double ds = static_cast<double>(s);
  return std::visit(
      Overloaded{
          [&](const family::Contagious& m) { return m.p + m.beta * ds; },
          [&](const family::GeneralizedBinomial& m) {
            return i == 0 ? m.p : (1.0 - m.theta) * m.p + m.theta * ds / di;
          },
          [&](const family::BetaBinomial& m) {
            return i == 0 ? m.p : m.p / (m.a * di + 1.0) + m.a * ds / (m.a * di + 1.0);
          },
          [&](const family::IncrementalRisk& m) { return logistic(m.a + m.b * ds); },
          [&](const family::Linear& m) {
            return i == 0 ? m.alpha0 : m.alpha.at(i, "alpha") + m.beta.at(i, "beta") * ds / di;
          },
          [&](const family::CorrelatedRW& m) {
            return 0.5 * (1.0 - m.mu * di / (di + m.l)) + m.mu * ds / (di + m.l);
          },
          [&](const family::Custom& m) {
            if (i >= m.table.size()) {
              throw Error(ErrorKind::MissingParameter,
                          "custom table has no row for i=" + shortest(i));
            }
            return m.table[i].at(s);
          },
      },
      model);
}

}  // namespace

ParamSeq ParamSeq::constant(double value) {
  ParamSeq seq;
  seq.constant_ = value;
  return seq;
}

ParamSeq ParamSeq::table(std::vector<double> values) {
  ParamSeq seq;
  seq.constant_.reset();
  seq.table_ = std::move(values);
  return seq;
}

double ParamSeq::at(std::size_t i, std::string_view name) const {
  if (constant_) return *constant_;
  if (i == 0 || i > table_.size()) {
    throw Error(ErrorKind::MissingParameter,
                std::string(name) + "_" + shortest(i) + " missing: table covers i=1.." +
                    shortest(table_.size()));
  }
  return table_[i - 1];
}

std::optional<std::size_t> ParamSeq::size() const noexcept {
  if (constant_) return std::nullopt;
  return table_.size();
}

std::string_view family_name(const DependenceModel& model) {
  return std::visit(Overloaded{
                        [](const family::Contagious&) { return "contagious"; },
                        [](const family::GeneralizedBinomial&) { return "generalized_binomial"; },
                        [](const family::BetaBinomial&) { return "beta_binomial"; },
                        [](const family::IncrementalRisk&) { return "incremental_risk"; },
                        [](const family::Linear&) { return "linear"; },
                        [](const family::CorrelatedRW&) { return "correlated_rw"; },
                        [](const family::Custom&) { return "custom"; },
                    },
                    model);
}

std::string_view switch_name(const SwitchModel& sw) {
  return std::visit(Overloaded{
                        [](const switching::IID&) { return "iid"; },
                        [](const switching::PoissonTrials&) { return "poisson_trials"; },
                        [](const switching::Explicit&) { return "explicit"; },
                    },
                    sw);
}

double initial_prob(const DependenceModel& model) { return dependence_prob(model, 0, 0); }

double dependence_prob(const DependenceModel& model, std::size_t i, std::size_t s) {
  if (s > i) {
    throw Error(ErrorKind::Domain,
                "P_i(s) needs s <= i, got i=" + shortest(i) + ", s=" + shortest(s));
  }
  const double value = raw_prob(model, i, s);
  if (!(value >= 0.0 && value <= 1.0)) {
    violation(std::string(family_name(model)) + ": P_i(s)=" + shortest(value) +
              " outside [0, 1] at i=" + shortest(i) + ", s=" + shortest(s));
  }
  return value;
}

double switch_prob(const SwitchModel& sw, std::size_t i) {
  if (i == 0) throw Error(ErrorKind::Domain, "lambda_i is defined for i >= 1");
  return std::visit(Overloaded{
                        [](const switching::IID& m) { return m.lambda; },
                        [&](const switching::PoissonTrials& m) {
                          return m.a / (m.a + m.b + static_cast<double>(i) - 1.0);
                        },
                        [&](const switching::Explicit& m) {
                          if (i > m.lambdas.size()) {
                            throw Error(ErrorKind::MissingParameter,
                                        "lambda_" + shortest(i) + " missing: table covers i=1.." +
                                            shortest(m.lambdas.size()));
                          }
                          return m.lambdas[i - 1];
                        },
                    },
                    sw);
}

std::vector<double> switch_probs(const SwitchModel& sw, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 1; i <= n; ++i) out[i - 1] = switch_prob(sw, i);
  return out;
}

void validate_model(const DependenceModel& model, std::size_t horizon) {
  if (horizon == 0) throw Error(ErrorKind::Domain, "horizon must be positive");
  const double n = static_cast<double>(horizon);

  std::visit(
      Overloaded{
          [&](const family::Contagious& m) {
            require_probability(m.p, "contagious p");
            require_finite(m.beta, "contagious beta");
            if (m.beta > 0.0 && !(m.beta < (1.0 - m.p) / n)) {
              violation("contagious: restriction beta < (1-p)/n violated (p=" + shortest(m.p) +
                        ", beta=" + shortest(m.beta) + ", n=" + shortest(horizon) + ")");
            }
            if (m.beta < 0.0 && !(-m.beta < m.p / n)) {
              violation("contagious: restriction |beta| < p/n violated (p=" + shortest(m.p) +
                        ", beta=" + shortest(m.beta) + ", n=" + shortest(horizon) + ")");
            }
          },
          [&](const family::GeneralizedBinomial& m) {
            require_probability(m.p, "generalized_binomial p");
            require_finite(m.theta, "generalized_binomial theta");
            if (!(m.theta <= 1.0)) {
              violation("generalized_binomial: restriction theta <= 1 violated (theta=" +
                        shortest(m.theta) + ")");
            }
          },
          [&](const family::BetaBinomial& m) {
            require_probability(m.p, "beta_binomial p");
            require_finite(m.a, "beta_binomial a");
            if (!(m.a >= -m.p / n)) {
              violation("beta_binomial: restriction a >= -p/n violated (p=" + shortest(m.p) +
                        ", a=" + shortest(m.a) + ", n=" + shortest(horizon) + ")");
            }
          },
          [&](const family::IncrementalRisk& m) {
            require_finite(m.a, "incremental_risk a");
            require_finite(m.b, "incremental_risk b");
          },
          [&](const family::Linear& m) {
            require_probability(m.alpha0, "linear alpha0");
            for (std::size_t i = 1; i < horizon; ++i) {
              const double a = m.alpha.at(i, "alpha");
              const double b = m.beta.at(i, "beta");
              if (!(a >= 0.0)) {
                violation("linear: alpha_i >= 0 violated at i=" + shortest(i) +
                          " (alpha=" + shortest(a) + ")");
              }
              if (!(b >= 0.0)) {
                violation("linear: beta_i >= 0 violated at i=" + shortest(i) +
                          " (beta=" + shortest(b) + ")");
              }
              if (!(a + b <= 1.0)) {
                violation("linear: alpha_i + beta_i <= 1 violated at i=" + shortest(i) +
                          " (alpha=" + shortest(a) + ", beta=" + shortest(b) + ")");
              }
              // Constant parameters: one index covers them all.
              if (m.alpha.is_constant() && m.beta.is_constant()) break;
            }
          },
          [&](const family::CorrelatedRW& m) {
            if (!(m.mu > -1.0 && m.mu < 1.0)) {
              violation("correlated_rw: restriction -1 < mu < 1 violated (mu=" + shortest(m.mu) +
                        ")");
            }
            if (!(m.l > 0.0) || !std::isfinite(m.l)) {
              violation("correlated_rw: restriction l > 0 violated (l=" + shortest(m.l) + ")");
            }
          },
          [&](const family::Custom& m) {
            if (m.table.size() < horizon) {
              throw Error(ErrorKind::MissingParameter,
                          "custom table needs rows i=0.." + shortest(horizon - 1) + ", has " +
                              shortest(m.table.size()));
            }
            for (std::size_t i = 0; i < horizon; ++i) {
              if (m.table[i].size() != i + 1) {
                throw Error(ErrorKind::MissingParameter,
                            "custom table row i=" + shortest(i) + " needs " + shortest(i + 1) +
                                " entries, has " + shortest(m.table[i].size()));
              }
              for (std::size_t s = 0; s <= i; ++s) dependence_prob(model, i, s);
            }
          },
      },
      model);

  if (std::holds_alternative<family::Custom>(model)) return;
  if (const auto* lin = std::get_if<family::Linear>(&model);
      lin != nullptr && lin->alpha.is_constant() && lin->beta.is_constant()) {
    // Constant linear parameters: the checks above already bound every P_i(s).
    dependence_prob(model, 0, 0);
    return;
  }
  for (std::size_t i = 0; i < horizon; ++i) {
    dependence_prob(model, i, 0);
    dependence_prob(model, i, i);
  }
}

void validate_switch(const SwitchModel& sw, std::size_t horizon) {
  std::visit(Overloaded{
                 [&](const switching::IID& m) { require_probability(m.lambda, "lambda"); },
                 [&](const switching::PoissonTrials& m) {
                   if (!(m.a > 0.0) || !std::isfinite(m.a)) {
                     violation("poisson_trials: a > 0 required (a=" + shortest(m.a) + ")");
                   }
                   if (!(m.b >= 0.0) || !std::isfinite(m.b)) {
                     violation("poisson_trials: b >= 0 required (b=" + shortest(m.b) + ")");
                   }
                 },
                 [&](const switching::Explicit& m) {
                   if (m.lambdas.size() < horizon) {
                     throw Error(ErrorKind::MissingParameter,
                                 "explicit switch needs lambda_1..lambda_" + shortest(horizon) +
                                     ", has " + shortest(m.lambdas.size()));
                   }
                   for (std::size_t i = 0; i < horizon; ++i) {
                     require_probability(m.lambdas[i], "lambda_" + shortest(i + 1));
                   }
                 },
             },
             sw);
}

std::optional<double> bern_one_b(const SwitchModel& sw) {
  if (const auto* pt = std::get_if<switching::PoissonTrials>(&sw); pt != nullptr && pt->a == 1.0) {
    return pt->b;
  }
  return std::nullopt;
}

}  // namespace bsrd
