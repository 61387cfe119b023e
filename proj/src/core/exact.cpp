#include "bsrd/exact.hpp"

#include <cmath>
#include <functional>

#include "bsrd/error.hpp"
#include "bsrd/format.hpp"
#include "bsrd/kernels.hpp"

namespace bsrd {
namespace {

constexpr double kDriftTolerance = 1e-10;

void check_length(const BsrdProcess& proc, std::size_t n) {
  if (n > proc.horizon()) {
    throw Error(ErrorKind::Domain,
                "n=" + shortest(n) + " exceeds the process horizon " + shortest(proc.horizon()));
  }
}

/// Fills row[0..i] with P*_i(s).
void mixture_row(const BsrdProcess& proc, std::size_t i, std::vector<double>& row) {
  const double lambda = proc.lambdas()[i - 1];
  if (const family::Linear* lin = proc.linear()) {
    const double alpha = lin->alpha.at(i, "alpha");
    const double slope = lambda * lin->beta.at(i, "beta") / static_cast<double>(i);
    kernels::active().linear_row(alpha, slope, row.data(), i + 1);
    return;
  }
  const double base = dependence_prob(proc.dependence(), i, 0);
  for (std::size_t s = 0; s <= i; ++s) {
    row[s] = (1.0 - lambda) * base + lambda * dependence_prob(proc.dependence(), i, s);
  }
}

/// Runs the recursion to S_n; `on_step(i, probs)` sees the law of S_i
/// (probs has i + 1 meaningful entries).
std::vector<double> forward(const BsrdProcess& proc, std::size_t n,
                            const std::function<void(std::size_t, const std::vector<double>&)>& on_step) {
  const auto& k = kernels::active();
  std::vector<double> current(n + 1, 0.0);
  std::vector<double> next(n + 1, 0.0);
  std::vector<double> row(n + 1, 0.0);
  current[0] = 1.0;
  if (n == 0) return current;

  const double p0 = proc.initial_prob();
  current[0] = 1.0 - p0;
  current[1] = p0;
  if (on_step) on_step(1, current);
  for (std::size_t i = 1; i < n; ++i) {
    mixture_row(proc, i, row);
    k.dp_step(current.data(), row.data(), next.data(), i + 1);
    current.swap(next);
    if (on_step) on_step(i + 1, current);
  }
  return current;
}

double indexed_mean(const std::vector<double>& probs, std::size_t len, std::vector<double>& scratch) {
  scratch.resize(len);
  for (std::size_t s = 0; s < len; ++s) scratch[s] = static_cast<double>(s) * probs[s];
  return kernels::active().compensated_sum(scratch.data(), len);
}

}  // namespace

void distribution_moments(const std::vector<double>& probs, double& mean, double& variance) {
  std::vector<double> scratch;
  mean = indexed_mean(probs, probs.size(), scratch);
  for (std::size_t s = 0; s < probs.size(); ++s) {
    const double d = static_cast<double>(s) - mean;
    scratch[s] = d * d * probs[s];
  }
  variance = kernels::active().compensated_sum(scratch.data(), probs.size());
}

SnDistribution exact_sn_distribution(const BsrdProcess& proc, std::size_t n) {
  check_length(proc, n);
  SnDistribution dist;
  dist.n = n;
  dist.probs = forward(proc, n, {});
  const double total = kernels::active().compensated_sum(dist.probs.data(), dist.probs.size());
  if (!(std::fabs(total - 1.0) <= kDriftTolerance)) {
    throw Error(ErrorKind::NumericIntegrity,
                "distribution of S_" + shortest(n) + " sums to " + shortest(total) +
                    ", drift exceeds 1e-10");
  }
  distribution_moments(dist.probs, dist.mean, dist.variance);
  return dist;
}

std::vector<double> exact_mean_sn(const BsrdProcess& proc, std::size_t n) {
  check_length(proc, n);
  std::vector<double> means(n);
  if (n == 0) return means;
  if (const family::Linear* lin = proc.linear()) {
    means[0] = lin->alpha0;
    for (std::size_t i = 1; i < n; ++i) {
      const double mu = means[i - 1];
      const double growth =
          lin->beta.at(i, "beta") * proc.lambdas()[i - 1] / static_cast<double>(i);
      means[i] = mu + lin->alpha.at(i, "alpha") + growth * mu;
    }
    return means;
  }
  std::vector<double> scratch;
  forward(proc, n, [&](std::size_t i, const std::vector<double>& probs) {
    means[i - 1] = indexed_mean(probs, i + 1, scratch);
  });
  return means;
}

std::vector<double> marginal_success_probs(const BsrdProcess& proc, std::size_t n) {
  const std::vector<double> means = exact_mean_sn(proc, n);
  std::vector<double> p(n);
  if (n == 0) return p;
  if (const family::Linear* lin = proc.linear()) {
    // E(X_{i+1}) = alpha_i + (beta_i / i) lambda_i E(S_i).
    p[0] = lin->alpha0;
    for (std::size_t i = 1; i < n; ++i) {
      p[i] = lin->alpha.at(i, "alpha") + lin->beta.at(i, "beta") / static_cast<double>(i) *
                                             proc.lambdas()[i - 1] * means[i - 1];
    }
    return p;
  }
  p[0] = means[0];
  for (std::size_t i = 1; i < n; ++i) p[i] = means[i] - means[i - 1];
  return p;
}

double marginal_success_prob(const BsrdProcess& proc, std::size_t i) {
  if (i == 0) throw Error(ErrorKind::Domain, "p_i is defined for i >= 1");
  return marginal_success_probs(proc, i)[i - 1];
}

}  // namespace bsrd
