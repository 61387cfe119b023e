#pragma once

#include <span>

namespace bsrd {

/// Standard normal CDF.
double normal_cdf(double x);

/// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_sf(double x);

struct KsResult {
  double statistic;
  double p_value;
};

/// One-sample Kolmogorov-Smirnov test of `samples` against N(0, 1), with the
/// asymptotic p-value Q(sqrt(m) D). Throws Error(InsufficientData) below 50 samples.
KsResult ks_test(std::span<const double> samples);

}  // namespace bsrd
