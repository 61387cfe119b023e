#include "bsrd/patterns.hpp"

#include <cmath>
#include <string>

#include "bsrd/error.hpp"
#include "bsrd/format.hpp"
#include "bsrd/kernels.hpp"

namespace bsrd {
namespace {

[[noreturn]] void domain(const std::string& message) { throw Error(ErrorKind::Domain, message); }

Bits lapse_window(std::size_t l) {
  Bits p(l + 2, 0);
  p[0] = 1;
  p[l + 1] = 1;
  return p;
}

Bits alternation_window(std::size_t l) {
  Bits p(2 * l, 0);
  for (std::size_t j = 0; j < l; ++j) p[2 * j] = 1;
  return p;
}

Bits z_window(std::size_t l) {
  Bits p(l + 1, 0);
  p[0] = 1;
  p[l] = 1;
  return p;
}

std::uint64_t windows(std::span<const std::uint8_t> bits, const Bits& pattern) {
  return kernels::active().count_windows(bits.data(), bits.size(), pattern.data(), pattern.size());
}

}  // namespace

Bits parse_bits(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (c != '0' && c != '1') {
      domain("bit string may contain only '0' and '1' (position " + shortest(k + 1) + ")");
    }
    bits.push_back(c == '1' ? 1 : 0);
  }
  return bits;
}

std::uint64_t count_lapses(std::span<const std::uint8_t> bits, std::size_t l) {
  const std::size_t n = bits.size();
  if (l == 0) domain("lapse length l must be >= 1");
  if (l > n) domain("lapse length l=" + shortest(l) + " exceeds string length n=" + shortest(n));
  if (l == n) {
    const Bits zeros(n, 0);
    return windows(bits, zeros);
  }
  std::uint64_t count = windows(bits, lapse_window(l));

  Bits leading(l + 1, 0);
  leading[l] = 1;
  count += windows(bits.first(l + 1), leading);

  Bits trailing(l + 1, 0);
  trailing.front() = 1;
  count += windows(bits.last(l + 1), trailing);
  return count;
}

std::vector<Lapse> extract_lapses(std::span<const std::uint8_t> bits) {
  std::vector<Lapse> out;
  std::size_t k = 0;
  while (k < bits.size()) {
    if (bits[k] != 0) {
      ++k;
      continue;
    }
    const std::size_t start = k;
    while (k < bits.size() && bits[k] == 0) ++k;
    out.push_back({start + 1, k - start});
  }
  return out;
}

std::uint64_t count_alternations(std::span<const std::uint8_t> bits, std::size_t l) {
  if (l == 0) domain("alternation size l must be >= 1");
  if (bits.size() <= 2 * l) {
    domain("A_l(n) needs n > 2l, got n=" + shortest(bits.size()) + ", l=" + shortest(l));
  }
  return windows(bits, alternation_window(l));
}

std::uint64_t count_tails(std::span<const std::uint8_t> bits) {
  if (bits.size() <= 2) domain("T_2(n) needs n > 2, got n=" + shortest(bits.size()));
  static const Bits pattern{1, 1, 0};
  return windows(bits, pattern);
}

std::uint64_t count_z(std::span<const std::uint8_t> bits, std::size_t l) {
  if (l == 0) domain("Z_l needs l >= 1");
  if (bits.size() < l + 1) {
    domain("Z_l needs n >= l + 1, got n=" + shortest(bits.size()) + ", l=" + shortest(l));
  }
  return windows(bits, z_window(l));
}

PatternCounts pattern_counts(std::span<const std::uint8_t> bits, std::size_t max_l) {
  PatternCounts pc;
  pc.n = bits.size();
  for (std::size_t l = 1; l <= std::min(pc.n, max_l); ++l) {
    pc.lapses.push_back({l, count_lapses(bits, l)});
  }
  for (std::size_t l = 1; l <= max_l && 2 * l < pc.n; ++l) {
    pc.alternations.push_back({l, count_alternations(bits, l)});
  }
  if (pc.n > 2) pc.tails = count_tails(bits);
  for (std::size_t l = 1; l <= max_l && l + 1 <= pc.n; ++l) {
    pc.z.push_back({l, count_z(bits, l)});
  }
  pc.intervals = extract_lapses(bits);
  return pc;
}

// ---------------------------------------------------------------------------
// Expectations

namespace product_sum {
namespace {

/// prod over j of (ones[j] ? lambda : 1 - lambda) at lambdas[start + j].
template <class Pred>
double window(std::span<const double> lambdas, std::size_t start, std::size_t len, Pred is_one) {
  double prod = 1.0;
  for (std::size_t j = 0; j < len; ++j) {
    const double lam = lambdas[start + j];
    prod *= is_one(j) ? lam : 1.0 - lam;
  }
  return prod;
}

}  // namespace

double lapse(std::span<const double> lambdas, std::size_t l) {
  const std::size_t n = lambdas.size();
  if (l == 0 || l > n) domain("lapse expectation needs 1 <= l <= n");
  if (l == n) return window(lambdas, 0, n, [](std::size_t) { return false; });
  double total = 0.0;
  for (std::size_t k = 0; k + l + 2 <= n; ++k) {
    total += window(lambdas, k, l + 2, [&](std::size_t j) { return j == 0 || j == l + 1; });
  }
  total += window(lambdas, 0, l + 1, [&](std::size_t j) { return j == l; });
  total += window(lambdas, n - l - 1, l + 1, [](std::size_t j) { return j == 0; });
  return total;
}

double alternation(std::span<const double> lambdas, std::size_t l) {
  const std::size_t n = lambdas.size();
  if (l == 0 || n <= 2 * l) domain("alternation expectation needs n > 2l");
  double total = 0.0;
  for (std::size_t k = 0; k + 2 * l <= n; ++k) {
    total += window(lambdas, k, 2 * l, [](std::size_t j) { return j % 2 == 0; });
  }
  return total;
}

double tail(std::span<const double> lambdas) {
  const std::size_t n = lambdas.size();
  if (n <= 2) domain("tail expectation needs n > 2");
  double total = 0.0;
  for (std::size_t k = 0; k + 3 <= n; ++k) {
    total += lambdas[k] * lambdas[k + 1] * (1.0 - lambdas[k + 2]);
  }
  return total;
}

double z(std::span<const double> lambdas, std::size_t l) {
  const std::size_t n = lambdas.size();
  if (l == 0 || n < l + 1) domain("Z_l expectation needs truncation >= l + 1");
  double total = 0.0;
  for (std::size_t k = 0; k + l + 1 <= n; ++k) {
    total += window(lambdas, k, l + 1, [&](std::size_t j) { return j == 0 || j == l; });
  }
  return total;
}

}  // namespace product_sum

double expected_lapse_count(const SwitchModel& sw, std::size_t n, std::size_t l) {
  if (l == 0 || l > n) {
    domain("E M_l(n) needs 1 <= l <= n, got n=" + shortest(n) + ", l=" + shortest(l));
  }
  validate_switch(sw, n);
  if (const auto* iid = std::get_if<switching::IID>(&sw)) {
    const double lam = iid->lambda;
    if (l == n) return std::pow(1.0 - lam, static_cast<double>(n));
    return std::pow(1.0 - lam, static_cast<double>(l)) *
           (2.0 * lam + lam * lam * static_cast<double>(n - l - 1));
  }
  if (const auto b = bern_one_b(sw); b && l < n) {
    const double dl = static_cast<double>(l);
    return (2.0 * *b + dl) / ((*b + dl) * (*b + dl + 1.0));
  }
  return product_sum::lapse(switch_probs(sw, n), l);
}

double expected_alternation_count(const SwitchModel& sw, std::size_t n, std::size_t l) {
  if (l == 0 || n <= 2 * l) {
    domain("E A_l(n) needs n > 2l, got n=" + shortest(n) + ", l=" + shortest(l));
  }
  validate_switch(sw, n);
  if (const auto* iid = std::get_if<switching::IID>(&sw)) {
    const double lam = iid->lambda;
    return static_cast<double>(n - 2 * l + 1) * std::pow(lam * (1.0 - lam), static_cast<double>(l));
  }
  if (const auto b = bern_one_b(sw)) {
    double total = 0.0;
    for (std::size_t k = 1; k <= n - 2 * l + 1; ++k) {
      double prod = 1.0;
      for (std::size_t i = 1; i <= l; ++i) {
        prod /= static_cast<double>(k) + *b + static_cast<double>(2 * i) - 1.0;
      }
      total += prod;
    }
    return total;
  }
  return product_sum::alternation(switch_probs(sw, n), l);
}

double expected_tail_count(const SwitchModel& sw, std::size_t n) {
  if (n <= 2) domain("E T_2(n) needs n > 2, got n=" + shortest(n));
  validate_switch(sw, n);
  if (const auto* iid = std::get_if<switching::IID>(&sw)) {
    const double lam = iid->lambda;
    return static_cast<double>(n - 2) * lam * lam * (1.0 - lam);
  }
  if (const auto b = bern_one_b(sw)) {
    const double dn = static_cast<double>(n);
    return 0.5 * ((3.0 + 2.0 * *b) / ((1.0 + *b) * (2.0 + *b)) -
                  (2.0 * dn + 2.0 * *b - 1.0) / ((dn + *b - 1.0) * (dn + *b)));
  }
  return product_sum::tail(switch_probs(sw, n));
}

ZExpectation expected_z(const SwitchModel& sw, std::size_t l, std::size_t truncation) {
  if (l == 0 || truncation < l + 1) {
    domain("E Z_l needs l >= 1 and truncation K >= l + 1, got l=" + shortest(l) +
           ", K=" + shortest(truncation));
  }
  validate_switch(sw, truncation);
  ZExpectation out;
  out.partial = product_sum::z(switch_probs(sw, truncation), l);
  if (const auto b = bern_one_b(sw); b && *b == 0.0) out.limit = 1.0 / static_cast<double>(l);
  return out;
}

double bern_alternation2_closed(double b, std::size_t n) {
  const double dn = static_cast<double>(n);
  return (5.0 + 2.0 * b) / (2.0 * (2.0 + b) * (3.0 + b)) -
         (2.0 * dn + 2.0 * b - 1.0) / (2.0 * (dn + b - 1.0) * (dn + b));
}

}  // namespace bsrd
