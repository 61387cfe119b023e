#include "bsrd/process.hpp"

#include "bsrd/error.hpp"
#include "bsrd/format.hpp"

namespace bsrd {

BsrdProcess::BsrdProcess(DependenceModel dependence, SwitchModel switch_model, std::size_t horizon)
    : dependence_(std::move(dependence)), switch_(std::move(switch_model)), horizon_(horizon) {
  validate_model(dependence_, horizon_);
  validate_switch(switch_, horizon_);
  initial_ = bsrd::initial_prob(dependence_);
  lambdas_ = switch_probs(switch_, horizon_);
}

void BsrdProcess::check_index(std::size_t i, std::size_t s) const {
  if (i > horizon_) {
    throw Error(ErrorKind::Domain,
                "index i=" + shortest(i) + " beyond horizon " + shortest(horizon_));
  }
  if (s > i) {
    throw Error(ErrorKind::Domain, "need s <= i, got i=" + shortest(i) + ", s=" + shortest(s));
  }
}

double BsrdProcess::dependence_prob(std::size_t i, std::size_t s) const {
  check_index(i, s);
  return bsrd::dependence_prob(dependence_, i, s);
}

double BsrdProcess::switch_prob(std::size_t i) const {
  if (i == 0 || i > horizon_) {
    throw Error(ErrorKind::Domain, "switch index i=" + shortest(i) + " outside 1.." +
                                       shortest(horizon_));
  }
  return lambdas_[i - 1];
}

double BsrdProcess::conditional_success_prob(std::size_t i, std::size_t s, int y) const {
  check_index(i, s);
  if (y != 0 && y != 1) throw Error(ErrorKind::Domain, "switch value must be 0 or 1");
  return bsrd::dependence_prob(dependence_, i, y == 1 ? s : 0);
}

double BsrdProcess::mixture_success_prob(std::size_t i, std::size_t s) const {
  check_index(i, s);
  if (i == 0) return initial_;
  const double lambda = switch_prob(i);
  return (1.0 - lambda) * bsrd::dependence_prob(dependence_, i, 0) +
         lambda * bsrd::dependence_prob(dependence_, i, s);
}

}  // namespace bsrd
