#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace bsrd {

enum class QuotaKind { Frequency, Succession };

/// Regular: a proper distribution. NeverOccurs: the quota can never be met
/// (pmf identically 0). Deterministic: all mass on a single point.
enum class WaitingStatus { Regular, NeverOccurs, Deterministic };

std::string_view waiting_status_name(WaitingStatus s);

struct WaitingTimeDist {
  QuotaKind kind = QuotaKind::Frequency;
  std::size_t quota = 0;   // r for FQ, s for SQ
  double lambda = 0.0;
  WaitingStatus status = WaitingStatus::Regular;
  std::vector<double> pmf;  // pmf[k] = P(W = k), k = 0..horizon
  double mean = 0.0;        // closed form; +inf when NeverOccurs
  std::vector<double> denominator;  // SQ pgf denominator coefficients, t^0 first
  std::vector<double> numerator;    // SQ pgf numerator coefficients
  /// Asymptotic ratio pmf[k+1] / pmf[k] (dominant pole); used for tail bounds.
  std::optional<double> tail_ratio;

  std::size_t horizon() const noexcept { return pmf.empty() ? 0 : pmf.size() - 1; }

  /// sum_k k pmf[k] over the table plus the geometric tail beyond it.
  double mean_with_tail() const;
};

/// Negative-binomial law of the waiting time to the r-th zero of IID(lambda)
/// switch trials: C(k-1, r-1) (1 - lambda)^r lambda^(k-r). Zero for k < r.
double fq_waiting_pmf(std::size_t r, double lambda, std::size_t k);

/// FQ table up to the smallest horizon whose remaining mass is below tail_mass.
WaitingTimeDist fq_waiting_dist(std::size_t r, double lambda, double tail_mass = 1e-13);

/// P(Bin(n, lambda) <= floor(n delta)).
double proportion_probability(std::size_t n, double delta, double lambda);

/// pgf of the waiting time to the first run of s zeros, q = 1 - lambda:
/// (1 - qt)(qt)^s / [(1 - lambda t)(1 - qt) - lambda q t^2 (1 - (qt)^(s-1))].
/// Throws Error(EvaluationSingularity) when |denominator| < 1e-14.
double sq_pgf_eval(std::size_t s, double lambda, double t);

/// Power-series coefficients of the SQ pgf up to t^horizon, obtained from the
/// linear recurrence of the denominator polynomial. Throws
/// Error(InversionIntegrity) if a coefficient leaves [-1e-12, 1 + 1e-12].
WaitingTimeDist sq_waiting_pmf(std::size_t s, double lambda, std::size_t horizon);

}  // namespace bsrd
