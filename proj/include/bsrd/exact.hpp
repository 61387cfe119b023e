#pragma once

#include <cstddef>
#include <vector>

#include "bsrd/process.hpp"

namespace bsrd {

/// Exact law of S_n: probs[s] = P(S_n = s) for s = 0..n.
struct SnDistribution {
  std::size_t n = 0;
  std::vector<double> probs;
  double mean = 0.0;
  double variance = 0.0;
};

/// Forward recursion over the mixture success probabilities, O(n^2) time and
/// O(n) space. Throws Error(NumericIntegrity) if total mass drifts from 1 by
/// more than 1e-10.
SnDistribution exact_sn_distribution(const BsrdProcess& proc, std::size_t n);

/// E S_1 .. E S_n (element k is E S_{k+1}). O(n) for Linear, otherwise one
/// pass of the distribution recursion.
std::vector<double> exact_mean_sn(const BsrdProcess& proc, std::size_t n);

/// p_i = P(X_i = 1) for 1 <= i <= n, element k is p_{k+1}.
std::vector<double> marginal_success_probs(const BsrdProcess& proc, std::size_t n);

/// p_i = E S_i - E S_{i-1}.
double marginal_success_prob(const BsrdProcess& proc, std::size_t i);

/// Mean and variance of a probability vector indexed by value.
void distribution_moments(const std::vector<double>& probs, double& mean, double& variance);

}  // namespace bsrd
