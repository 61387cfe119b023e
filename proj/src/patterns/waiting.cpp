#include "bsrd/waiting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsrd/error.hpp"
#include "bsrd/format.hpp"

namespace bsrd {
namespace {

constexpr double kCoefficientSlack = 1e-12;
constexpr double kSingularity = 1e-14;
constexpr std::size_t kMaxAdaptiveHorizon = 50'000'000;

[[noreturn]] void domain(const std::string& message) { throw Error(ErrorKind::Domain, message); }

void require_probability(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) domain("lambda must lie in [0, 1], got " + shortest(lambda));
}

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Largest positive root of z^s - lambda (z^{s-1} + q z^{s-2} + ... + q^{s-1}),
/// the decay rate of P(W = k) for the first run of s zeros.
double sq_dominant_ratio(std::size_t s, double lambda) {
  const double q = 1.0 - lambda;
  auto g = [&](double z) {
    double tail = 0.0;
    for (std::size_t j = 0; j < s; ++j) tail = tail * z + std::pow(q, static_cast<double>(j));
    return std::pow(z, static_cast<double>(s)) - lambda * tail;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view waiting_status_name(WaitingStatus s) {
  switch (s) {
    case WaitingStatus::Regular: return "regular";
    case WaitingStatus::NeverOccurs: return "never_occurs";
    case WaitingStatus::Deterministic: return "deterministic";
  }
  return "regular";
}

double WaitingTimeDist::mean_with_tail() const {
  if (status == WaitingStatus::NeverOccurs) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const double y = static_cast<double>(k) * pmf[k] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  sum -= carry;
  if (pmf.size() < 2) return sum;
  const double last = pmf.back();
  double rho = 0.0;
  if (tail_ratio) {
    rho = *tail_ratio;
  } else if (pmf[pmf.size() - 2] > 0.0) {
    rho = last / pmf[pmf.size() - 2];
  }
  if (!(last > 0.0) || !(rho > 0.0 && rho < 1.0)) return sum;
  const double K = static_cast<double>(horizon());
  return sum + last * (K * rho / (1.0 - rho) + rho / ((1.0 - rho) * (1.0 - rho)));
}

double fq_waiting_pmf(std::size_t r, double lambda, std::size_t k) {
  if (r == 0) domain("frequency quota r must be >= 1");
  require_probability(lambda);
  if (k < r) return 0.0;
  if (lambda == 1.0) return 0.0;
  if (lambda == 0.0) return k == r ? 1.0 : 0.0;
  const double dk = static_cast<double>(k);
  const double dr = static_cast<double>(r);
  return std::exp(log_choose(dk - 1.0, dr - 1.0) + dr * std::log1p(-lambda) +
                  (dk - dr) * std::log(lambda));
}

WaitingTimeDist fq_waiting_dist(std::size_t r, double lambda, double tail_mass) {
  if (r == 0) domain("frequency quota r must be >= 1");
  require_probability(lambda);
  WaitingTimeDist d;
  d.kind = QuotaKind::Frequency;
  d.quota = r;
  d.lambda = lambda;
  if (lambda == 1.0) {
    d.status = WaitingStatus::NeverOccurs;
    d.pmf.assign(r + 1, 0.0);
    d.mean = std::numeric_limits<double>::infinity();
    return d;
  }
  d.mean = static_cast<double>(r) / (1.0 - lambda);
  if (lambda == 0.0) {
    d.status = WaitingStatus::Deterministic;
    d.pmf.assign(r + 1, 0.0);
    d.pmf[r] = 1.0;
    return d;
  }
  d.pmf.assign(r, 0.0);
  double value = std::pow(1.0 - lambda, static_cast<double>(r));
  for (std::size_t k = r;; ++k) {
    d.pmf.push_back(value);
    // Successive ratios lambda k / (k - r + 1) decrease towards lambda, so past
    // the mode the remaining mass is at most value * rho / (1 - rho).
    const double rho = lambda * static_cast<double>(k) / static_cast<double>(k - r + 1);
    if (rho < 1.0 && value * rho / (1.0 - rho) < tail_mass) break;
    if (k > kMaxAdaptiveHorizon) {
      throw Error(ErrorKind::Domain, "negative binomial table exceeds the adaptive horizon limit");
    }
    value *= rho;
  }
  d.tail_ratio = std::nullopt;
  return d;
}

double proportion_probability(std::size_t n, double delta, double lambda) {
  require_probability(lambda);
  const double scaled = std::floor(static_cast<double>(n) * delta);
  if (scaled < 0.0) return 0.0;
  if (scaled >= static_cast<double>(n)) return 1.0;
  const auto m = static_cast<std::size_t>(scaled);
  if (lambda == 0.0) return 1.0;
  if (lambda == 1.0) return 0.0;
  const double dn = static_cast<double>(n);
  const double log_l = std::log(lambda);
  const double log_q = std::log1p(-lambda);
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    const double dk = static_cast<double>(k);
    const double term = std::exp(log_choose(dn, dk) + dk * log_l + (dn - dk) * log_q);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return std::min(1.0, std::max(0.0, sum - carry));
}

double sq_pgf_eval(std::size_t s, double lambda, double t) {
  if (s == 0) domain("succession quota s must be >= 1");
  if (!(lambda > 0.0 && lambda < 1.0)) domain("SQ pgf needs lambda in (0, 1), got " + shortest(lambda));
  if (!(std::fabs(t) <= 1.0)) domain("SQ pgf is evaluated for |t| <= 1, got t=" + shortest(t));
  const double q = 1.0 - lambda;
  const double qt = q * t;
  const double numerator = (1.0 - qt) * std::pow(qt, static_cast<double>(s));
  const double denominator = (1.0 - lambda * t) * (1.0 - qt) -
                             lambda * q * t * t * (1.0 - std::pow(qt, static_cast<double>(s - 1)));
  if (std::fabs(denominator) < kSingularity) {
    throw Error(ErrorKind::EvaluationSingularity,
                "SQ pgf denominator vanishes at t=" + shortest(t) + " (|d| < 1e-14)");
  }
  return numerator / denominator;
}

WaitingTimeDist sq_waiting_pmf(std::size_t s, double lambda, std::size_t horizon) {
  if (s == 0) domain("succession quota s must be >= 1");
  if (horizon < s) domain("horizon K must be >= s");
  require_probability(lambda);
  WaitingTimeDist d;
  d.kind = QuotaKind::Succession;
  d.quota = s;
  d.lambda = lambda;
  d.pmf.assign(horizon + 1, 0.0);
  if (lambda == 1.0) {
    d.status = WaitingStatus::NeverOccurs;
    d.mean = std::numeric_limits<double>::infinity();
    return d;
  }
  if (lambda == 0.0) {
    d.status = WaitingStatus::Deterministic;
    d.pmf[s] = 1.0;
    d.mean = static_cast<double>(s);
    return d;
  }

  const double q = 1.0 - lambda;
  const double qs = std::pow(q, static_cast<double>(s));
  d.mean = (1.0 - qs) / (lambda * qs);

  // Numerator (1 - qt)(qt)^s.
  d.numerator.assign(s + 2, 0.0);
  d.numerator[s] = qs;
  d.numerator[s + 1] = -qs * q;

  // Denominator (1 - lambda t)(1 - qt) - lambda q t^2 (1 - (qt)^{s-1}); the
  // t^2 terms cancel, leaving 1 - t + lambda q^s t^{s+1}.
  d.denominator.assign(s + 2, 0.0);
  d.denominator[0] = 1.0;
  d.denominator[1] = -1.0;
  d.denominator[s + 1] = lambda * qs;

  std::vector<double> raw(horizon + 1, 0.0);
  for (std::size_t k = 0; k <= horizon; ++k) {
    double acc = k < d.numerator.size() ? d.numerator[k] : 0.0;
    for (std::size_t j = 1; j < d.denominator.size() && j <= k; ++j) {
      acc -= d.denominator[j] * raw[k - j];
    }
    raw[k] = acc / d.denominator[0];
    if (!(raw[k] >= -kCoefficientSlack && raw[k] <= 1.0 + kCoefficientSlack)) {
      throw Error(ErrorKind::InversionIntegrity,
                  "pgf coefficient at t^" + shortest(k) + " is " + shortest(raw[k]) +
                      ", outside [-1e-12, 1 + 1e-12]");
    }
    d.pmf[k] = std::min(1.0, std::max(0.0, raw[k]));
  }
  d.tail_ratio = sq_dominant_ratio(s, lambda);
  return d;
}

}  // namespace bsrd
