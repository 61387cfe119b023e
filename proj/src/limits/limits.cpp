#include "bsrd/limits.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bsrd/error.hpp"
#include "bsrd/exact.hpp"
#include "bsrd/format.hpp"

namespace bsrd {
namespace {

constexpr double kRelSlack = 1e-12;

const family::Linear& require_linear(const BsrdProcess& proc) {
  const family::Linear* lin = proc.linear();
  if (lin == nullptr) {
    throw Error(ErrorKind::UnsupportedFamily,
                "limit constants are defined for the linear family only, got " +
                    std::string(family_name(proc.dependence())));
  }
  return *lin;
}

void require_length(const BsrdProcess& proc, std::size_t n) {
  if (n == 0 || n > proc.horizon()) {
    throw Error(ErrorKind::Domain,
                "n must lie in 1.." + shortest(proc.horizon()) + ", got " + shortest(n));
  }
}

/// beta_k lambda_k for k >= 1.
double memory_weight(const family::Linear& lin, const BsrdProcess& proc, std::size_t k) {
  return lin.beta.at(k, "beta") * proc.lambdas()[k - 1];
}

struct Running {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum - carry; }
};

}  // namespace

LimitConstants limit_constants(const BsrdProcess& proc, std::size_t n) {
  const family::Linear& lin = require_linear(proc);
  require_length(proc, n);

  const std::vector<double> p = marginal_success_probs(proc, n);
  LimitConstants c;
  c.a.resize(n);
  c.A.resize(n);
  c.B.resize(n);
  c.slln_partial.resize(n);
  c.ratio.resize(n);

  Running log_a;
  Running a_sq;
  Running b_sq;
  Running slln;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    if (i >= 2) log_a.add(std::log1p(memory_weight(lin, proc, i - 1) / static_cast<double>(i - 1)));
    c.a[k] = std::exp(log_a.value());
    const double inv_sq = 1.0 / (c.a[k] * c.a[k]);
    a_sq.add(inv_sq);
    b_sq.add(p[k] * (1.0 - p[k]) * inv_sq);
    slln.add((1.0 - memory_weight(lin, proc, i)) / (1.0 + static_cast<double>(i)));
    c.A[k] = std::sqrt(a_sq.value());
    c.B[k] = std::sqrt(std::max(b_sq.value(), 0.0));
    c.slln_partial[k] = slln.value();
    c.ratio[k] = c.B[k] > 0.0 ? c.A[k] / c.B[k] : std::numeric_limits<double>::infinity();

    if (k > 0) {
      if (c.a[k] < c.a[k - 1]) {
        throw Error(ErrorKind::InternalConsistency, "a_n decreased at n=" + shortest(i));
      }
      const double prev_ratio = c.a[k - 1] / static_cast<double>(i - 1);
      if (c.a[k] / static_cast<double>(i) > prev_ratio * (1.0 + kRelSlack)) {
        throw Error(ErrorKind::InternalConsistency, "a_n / n increased at n=" + shortest(i));
      }
    }
    if (b_sq.value() > 0.25 * a_sq.value() * (1.0 + kRelSlack)) {
      throw Error(ErrorKind::InternalConsistency, "B_n^2 > A_n^2 / 4 at n=" + shortest(i));
    }
  }
  return c;
}

double slln_partial_sum(const BsrdProcess& proc, std::size_t n) {
  const family::Linear& lin = require_linear(proc);
  require_length(proc, n);
  Running sum;
  for (std::size_t k = 1; k <= n; ++k) {
    sum.add((1.0 - memory_weight(lin, proc, k)) / (1.0 + static_cast<double>(k)));
  }
  return sum.value();
}

LimitNormalizer::LimitNormalizer(const BsrdProcess& proc, std::size_t n) : n_(n) {
  const LimitConstants c = limit_constants(proc, n);
  mean_ = exact_mean_sn(proc, n).back();
  a_n_ = c.a.back();
  B_n_ = c.B.back();
}

double LimitNormalizer::clt(std::int64_t s_n) const {
  if (!(B_n_ > 0.0)) {
    throw Error(ErrorKind::DegenerateVariance,
                "B_n = 0 at n=" + shortest(n_) + ": S_n is deterministic, no CLT scaling exists");
  }
  return (static_cast<double>(s_n) - mean_) / (a_n_ * B_n_);
}

double LimitNormalizer::lil(std::int64_t s_n) const {
  if (!(B_n_ > std::numbers::e)) {
    throw Error(ErrorKind::Domain, "LIL normalizer needs B_n > e so that log log B_n > 0; B_n = " +
                                       shortest(B_n_) + " at n=" + shortest(n_) +
                                       ", use a larger n");
  }
  return (static_cast<double>(s_n) - mean_) / (a_n_ * B_n_ * std::sqrt(std::log(std::log(B_n_))));
}

double clt_statistic(const BsrdProcess& proc, std::int64_t s_n, std::size_t n) {
  return LimitNormalizer(proc, n).clt(s_n);
}

double lil_statistic(const BsrdProcess& proc, std::int64_t s_n, std::size_t n) {
  return LimitNormalizer(proc, n).lil(s_n);
}

MartingaleTrace martingale_trace(const LimitConstants& constants, const std::vector<double>& means,
                                 const PathSample& path) {
  const std::size_t n = path.size();
  if (constants.size() < n || means.size() < n) {
    throw Error(ErrorKind::Domain, "constants do not cover a path of length " + shortest(n));
  }
  MartingaleTrace t;
  t.M.resize(n);
  t.D.resize(n);
  t.bound.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    t.M[k] = (static_cast<double>(path.partial_sums[k]) - means[k]) / constants.a[k];
    t.D[k] = k == 0 ? t.M[0] : t.M[k] - t.M[k - 1];
    t.bound[k] = 2.0 / constants.a[k];
    if (std::fabs(t.D[k]) > t.bound[k] * (1.0 + kRelSlack)) {
      throw Error(ErrorKind::InternalConsistency,
                  "|D_i| = " + shortest(std::fabs(t.D[k])) + " exceeds 2/a_i = " +
                      shortest(t.bound[k]) + " at i=" + shortest(k + 1));
    }
  }
  return t;
}

MartingaleTrace martingale_trace(const BsrdProcess& proc, const PathSample& path) {
  const std::size_t n = path.size();
  return martingale_trace(limit_constants(proc, n), exact_mean_sn(proc, n), path);
}

std::string_view cond1_name(Cond1Class c) {
  switch (c) {
    case Cond1Class::Holds: return "holds";
    case Cond1Class::Fails: return "fails";
    case Cond1Class::Undetermined: return "undetermined";
  }
  return "undetermined";
}

RegimeReport regime_report(const BsrdProcess& proc, std::size_t n) {
  const family::Linear& lin = require_linear(proc);
  RegimeReport r;
  r.constants = limit_constants(proc, n);

  r.degenerate = n >= 2;
  for (std::size_t k = 1; k < n && r.degenerate; ++k) {
    r.degenerate = memory_weight(lin, proc, k) == 1.0;
  }

  // Analytic classification of the divergence of sum (1 - beta_k lambda_k) / (1 + k).
  const SwitchModel& sw = proc.switch_model();
  if (lin.beta.is_constant()) {
    const double beta = lin.beta.constant_value();
    if (const auto* iid = std::get_if<switching::IID>(&sw)) {
      r.cond1 = beta * iid->lambda < 1.0 ? Cond1Class::Holds : Cond1Class::Fails;
    } else if (std::holds_alternative<switching::PoissonTrials>(sw)) {
      // lambda_k -> 0, so the terms behave like 1 / (1 + k).
      r.cond1 = Cond1Class::Holds;
    }
  }

  if (lin.alpha.is_constant() && lin.beta.is_constant()) {
    const double alpha = lin.alpha.constant_value();
    const bool memoryless = lin.beta.constant_value() == 0.0 ||
                            (std::holds_alternative<switching::IID>(sw) &&
                             std::get<switching::IID>(sw).lambda == 0.0);
    if (memoryless && alpha > 0.0 && alpha < 1.0) {
      r.limiting_ratio = 1.0 / std::sqrt(alpha * (1.0 - alpha));
    }
  }

  const double b_n = r.constants.B.back();
  if (r.degenerate) {
    r.flags.push_back(
        "CLT hypotheses not satisfied at horizon: beta_k lambda_k = 1 for all k, so a_n = n "
        "and B_n stays bounded");
  }
  if (r.cond1 == Cond1Class::Fails) {
    r.flags.push_back(
        "SLLN condition fails: sum (1 - beta_k lambda_k) / (1 + k) converges, (S_n - E S_n) / n "
        "has a non-degenerate limit");
  }
  if (!(b_n > 0.0)) r.flags.push_back("B_n = 0: S_n is deterministic");
  r.clt_hypotheses_plausible = !r.degenerate && r.cond1 != Cond1Class::Fails && b_n > 0.0;
  return r;
}

}  // namespace bsrd
