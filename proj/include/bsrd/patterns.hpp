#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bsrd/model.hpp"

namespace bsrd {

using Bits = std::vector<std::uint8_t>;

/// Parses a string of '0'/'1' characters; throws Error(Domain) otherwise.
Bits parse_bits(std::string_view text);

struct Lapse {
  std::size_t start;   // 1-based index of the first zero
  std::size_t length;
};

// Counting kernels. Each evaluates the defining indicator sum over all
// window start positions (overlaps allowed).

/// M_l(n): interior windows 1 0^l 1 plus the leading 0^l 1 and trailing 1 0^l
/// boundary terms; for l = n, the all-zeros indicator. Throws Error(Domain)
/// for l = 0 or l > n.
std::uint64_t count_lapses(std::span<const std::uint8_t> bits, std::size_t l);

/// Maximal zero runs, in order.
std::vector<Lapse> extract_lapses(std::span<const std::uint8_t> bits);

/// A_l(n): windows (10)^l. Needs n > 2l.
std::uint64_t count_alternations(std::span<const std::uint8_t> bits, std::size_t l);

/// T_2(n): windows 110. Needs n > 2.
std::uint64_t count_tails(std::span<const std::uint8_t> bits);

/// Z_l truncated to the string: windows 1 0^{l-1} 1. Needs n >= l + 1.
std::uint64_t count_z(std::span<const std::uint8_t> bits, std::size_t l);

struct LengthCount {
  std::size_t l;
  std::uint64_t count;
};

struct PatternCounts {
  std::size_t n = 0;
  std::vector<LengthCount> lapses;        // M_l, l = 1..min(n, max_l)
  std::vector<LengthCount> alternations;  // A_l for 2l < n, l <= max_l
  std::optional<std::uint64_t> tails;     // T_2 when n > 2
  std::vector<LengthCount> z;             // Z_l for l + 1 <= n, l <= max_l
  std::vector<Lapse> intervals;
};

PatternCounts pattern_counts(std::span<const std::uint8_t> bits, std::size_t max_l);

// Exact expectations under independent switch trials.

/// E M_l(n); closed forms for IID and Bern(1, b), product-sum otherwise.
/// l = n gives prod (1 - lambda_i).
double expected_lapse_count(const SwitchModel& sw, std::size_t n, std::size_t l);

/// E A_l(n); closed forms for IID and Bern(1, b), product-sum otherwise.
double expected_alternation_count(const SwitchModel& sw, std::size_t n, std::size_t l);

/// E T_2(n); closed forms for IID and Bern(1, b), product-sum otherwise.
double expected_tail_count(const SwitchModel& sw, std::size_t n);

struct ZExpectation {
  double partial;                 // sum over k = 1..K-l
  std::optional<double> limit;    // 1 / l for Bern(1, 0)
};

ZExpectation expected_z(const SwitchModel& sw, std::size_t l, std::size_t truncation);

/// Direct evaluation over explicit lambdas: sum over starts of the product of
/// lambda (pattern bit 1) or 1 - lambda (pattern bit 0). Used for the general
/// switch laws and as the cross-check of the closed forms.
namespace product_sum {
double lapse(std::span<const double> lambdas, std::size_t l);
double alternation(std::span<const double> lambdas, std::size_t l);
double tail(std::span<const double> lambdas);
double z(std::span<const double> lambdas, std::size_t l);
}  // namespace product_sum

/// E A_2(n) under Bern(1, b) in its telescoped form.
double bern_alternation2_closed(double b, std::size_t n);

}  // namespace bsrd
