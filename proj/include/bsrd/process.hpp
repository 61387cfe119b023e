#pragma once

#include <cstddef>
#include <vector>

#include "bsrd/model.hpp"

namespace bsrd {

/// A dependence model paired with a memory switch law, validated up to a
/// fixed horizon n. Immutable after construction.
class BsrdProcess {
 public:
  BsrdProcess(DependenceModel dependence, SwitchModel switch_model, std::size_t horizon);

  const DependenceModel& dependence() const noexcept { return dependence_; }
  const SwitchModel& switch_model() const noexcept { return switch_; }
  std::size_t horizon() const noexcept { return horizon_; }

  /// nullptr unless the dependence family is Linear.
  const family::Linear* linear() const noexcept { return std::get_if<family::Linear>(&dependence_); }

  double initial_prob() const { return initial_; }
  double dependence_prob(std::size_t i, std::size_t s) const;
  double switch_prob(std::size_t i) const;

  /// P*_i(s, y): y = 0 gives P_i(0), y = 1 gives P_i(s).
  double conditional_success_prob(std::size_t i, std::size_t s, int y) const;

  /// P*_i(s) = (1 - lambda_i) P_i(0) + lambda_i P_i(s).
  double mixture_success_prob(std::size_t i, std::size_t s) const;

  /// lambda_1 .. lambda_horizon; element k is lambda_{k+1}.
  const std::vector<double>& lambdas() const noexcept { return lambdas_; }

 private:
  void check_index(std::size_t i, std::size_t s) const;

  DependenceModel dependence_;
  SwitchModel switch_;
  std::size_t horizon_;
  double initial_;
  std::vector<double> lambdas_;
};

}  // namespace bsrd
