#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bsrd/error.hpp"
#include "bsrd/patterns.hpp"
#include "oracles.hpp"

using namespace bsrd;

namespace {

std::vector<int> as_ints(const Bits& b) { return {b.begin(), b.end()}; }

Bits from_mask(std::uint64_t mask, std::size_t n) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
  return b;
}

bool throws_domain(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::Domain;
  }
  return false;
}

}  // namespace

TEST_CASE("counting examples") {
  CHECK(count_lapses(parse_bits("010"), 1) == 2);
  CHECK(count_lapses(parse_bits("000"), 3) == 1);
  CHECK(count_lapses(parse_bits("000"), 1) == 0);
  for (std::size_t l = 1; l <= 3; ++l) CHECK(count_lapses(parse_bits("111"), l) == 0);

  const auto lapses = extract_lapses(parse_bits("01001"));
  REQUIRE(lapses.size() == 2);
  CHECK(lapses[0].start == 1);
  CHECK(lapses[0].length == 1);
  CHECK(lapses[1].start == 3);
  CHECK(lapses[1].length == 2);
  CHECK(extract_lapses(parse_bits("1111")).empty());
  const auto all = extract_lapses(parse_bits("000"));
  REQUIRE(all.size() == 1);
  CHECK(all[0].start == 1);
  CHECK(all[0].length == 3);

  CHECK(count_alternations(parse_bits("1010"), 1) == 2);
  CHECK(count_alternations(parse_bits("10101"), 2) == 1);
  CHECK(count_alternations(parse_bits("101010"), 2) == 2);
  CHECK(count_alternations(parse_bits("00000"), 2) == 0);

  CHECK(count_tails(parse_bits("110")) == 1);
  CHECK(count_tails(parse_bits("1110")) == 1);
  CHECK(count_tails(parse_bits("111")) == 0);

  CHECK(count_z(parse_bits("11"), 1) == 1);
  CHECK(count_z(parse_bits("101"), 2) == 1);
  CHECK(count_z(parse_bits("1001"), 2) == 0);
}

TEST_CASE("counting domain errors") {
  CHECK(throws_domain([] { (void)count_lapses(parse_bits("01"), 3); }));
  CHECK(throws_domain([] { (void)count_lapses(parse_bits("01"), 0); }));
  CHECK(throws_domain([] { (void)count_alternations(parse_bits("1010"), 2); }));
  CHECK(throws_domain([] { (void)count_tails(parse_bits("11")); }));
  CHECK(throws_domain([] { (void)count_z(parse_bits("1"), 1); }));
  CHECK(throws_domain([] { (void)parse_bits("0121"); }));
}

TEST_CASE("counts equal the definitions on every string up to length 14") {
  for (std::size_t n = 1; n <= 14; ++n) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const Bits b = from_mask(mask, n);
      const auto y = as_ints(b);
      for (std::size_t l = 1; l <= n; ++l) {
        REQUIRE(count_lapses(b, l) == oracle::lapses(y, l));
        if (n > 2 * l) REQUIRE(count_alternations(b, l) == oracle::alternations(y, l));
        if (n >= l + 1) REQUIRE(count_z(b, l) == oracle::z_count(y, l));
      }
      if (n > 2) REQUIRE(count_tails(b) == oracle::tails(y));
      // Intervals partition the zeros.
      std::size_t zeros = 0;
      for (const Lapse& lp : extract_lapses(b)) {
        zeros += lp.length;
        for (std::size_t k = 0; k < lp.length; ++k) REQUIRE(b[lp.start - 1 + k] == 0);
      }
      REQUIRE(zeros == n - static_cast<std::size_t>(std::count(b.begin(), b.end(), 1)));
    }
  }
}

TEST_CASE("expectation examples") {
  const SwitchModel half = switching::IID{0.5};
  const SwitchModel bern10 = switching::PoissonTrials{1.0, 0.0};
  CHECK(expected_lapse_count(half, 3, 1) == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(oracle::expectation({0.5, 0.5, 0.5}, [](const std::vector<int>& y) {
          return static_cast<double>(oracle::lapses(y, 1));
        }) == doctest::Approx(0.625).epsilon(1e-15));
  for (std::size_t n = 2; n <= 30; ++n) {
    CHECK(std::fabs(expected_lapse_count(bern10, n, 1) - 0.5) <= 1e-12);
    CHECK(std::fabs(product_sum::lapse(switch_probs(bern10, n), 1) - 0.5) <= 1e-12);
  }
  CHECK(expected_lapse_count(switching::IID{1.0}, 10, 3) == 0.0);

  CHECK(std::fabs(expected_alternation_count(bern10, 3, 1) - 5.0 / 6.0) <= 1e-12);
  CHECK(std::fabs(product_sum::alternation(switch_probs(bern10, 3), 1) - 5.0 / 6.0) <= 1e-12);
  CHECK(std::fabs(expected_alternation_count(bern10, 5, 2) - (5.0 / 12.0 - 9.0 / 40.0)) <= 1e-12);
  CHECK(std::fabs(bern_alternation2_closed(0.0, 5) - (5.0 / 12.0 - 9.0 / 40.0)) <= 1e-12);
  CHECK(expected_alternation_count(switching::IID{0.0}, 9, 2) == 0.0);

  CHECK(std::fabs(expected_tail_count(bern10, 3) - 1.0 / 3.0) <= 1e-12);
  CHECK(std::fabs(product_sum::tail(switch_probs(bern10, 3)) - 1.0 / 3.0) <= 1e-12);
  CHECK(expected_tail_count(switching::IID{1.0}, 7) == 0.0);
  CHECK(expected_tail_count(half, 4) == doctest::Approx(0.25));

  CHECK(expected_z(bern10, 1, 100'000).partial == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(expected_z(bern10, 2, 100'000).partial == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(*expected_z(bern10, 20, 1000).limit == doctest::Approx(0.05));
  CHECK(expected_z(bern10, 20, 1000).partial == doctest::Approx(1.0 / 20 - 1.0 / 1000).epsilon(1e-12));
  CHECK(expected_z(switching::IID{0.0}, 3, 50).partial == 0.0);
}

TEST_CASE("Bern(1,b) lapse expectation does not depend on n") {
  for (const double b : {0.0, 1.0, 2.5}) {
    const SwitchModel sw = switching::PoissonTrials{1.0, b};
    for (std::size_t l = 1; l <= 3; ++l) {
      const double ref = expected_lapse_count(sw, l + 1, l);
      for (std::size_t n = l + 1; n <= l + 50; ++n) {
        CHECK(std::fabs(expected_lapse_count(sw, n, l) - ref) <= 1e-12);
        CHECK(std::fabs(product_sum::lapse(switch_probs(sw, n), l) - ref) <= 1e-12);
      }
    }
  }
}

TEST_CASE("closed forms agree with product sums and with enumeration") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<SwitchModel> models{switching::IID{0.5}, switching::IID{0.37},
                                  switching::PoissonTrials{1.0, 0.0},
                                  switching::PoissonTrials{1.0, 2.5}, switching::PoissonTrials{2.0, 1.0}};
  std::vector<double> lam(12);
  for (auto& x : lam) x = unif(gen);
  models.push_back(switching::Explicit{lam});

  for (const auto& sw : models) {
    CAPTURE(std::string(switch_name(sw)));
    for (std::size_t n = 3; n <= 12; ++n) {
      const auto lambdas = switch_probs(sw, n);
      for (std::size_t l = 1; l <= n; ++l) {
        const double brute = oracle::expectation(lambdas, [&](const std::vector<int>& y) {
          return static_cast<double>(oracle::lapses(y, l));
        });
        CHECK(std::fabs(expected_lapse_count(sw, n, l) - brute) <= 1e-12);
        CHECK(std::fabs(product_sum::lapse(lambdas, l) - brute) <= 1e-12);
        if (n > 2 * l) {
          const double a = oracle::expectation(lambdas, [&](const std::vector<int>& y) {
            return static_cast<double>(oracle::alternations(y, l));
          });
          CHECK(std::fabs(expected_alternation_count(sw, n, l) - a) <= 1e-12);
          CHECK(std::fabs(product_sum::alternation(lambdas, l) - a) <= 1e-12);
        }
        if (n >= l + 1) {
          const double z = oracle::expectation(lambdas, [&](const std::vector<int>& y) {
            return static_cast<double>(oracle::z_count(y, l));
          });
          CHECK(std::fabs(expected_z(sw, l, n).partial - z) <= 1e-12);
        }
      }
      const double t = oracle::expectation(
          lambdas, [](const std::vector<int>& y) { return static_cast<double>(oracle::tails(y)); });
      CHECK(std::fabs(expected_tail_count(sw, n) - t) <= 1e-12);
    }
  }
  for (const double b : {0.0, 0.5, 3.0}) {
    for (std::size_t n = 5; n <= 40; ++n) {
      CHECK(std::fabs(bern_alternation2_closed(b, n) -
                      expected_alternation_count(switching::PoissonTrials{1.0, b}, n, 2)) <= 1e-12);
    }
  }
}

TEST_CASE("IID alternation count has n - 2l + 1 terms") {
  // The enumeration settles the number of window positions.
  const double lam = 0.3;
  for (std::size_t n = 3; n <= 10; ++n) {
    for (std::size_t l = 1; 2 * l < n; ++l) {
      const std::vector<double> lambdas(n, lam);
      const double brute = oracle::expectation(lambdas, [&](const std::vector<int>& y) {
        return static_cast<double>(oracle::alternations(y, l));
      });
      CHECK(std::fabs(brute - (n - 2.0 * l + 1.0) * std::pow(lam * (1 - lam), l)) <= 1e-12);
    }
  }
}

TEST_CASE("pattern_counts bundles the counters") {
  const Bits b = parse_bits("0110100");
  const PatternCounts pc = pattern_counts(b, 3);
  CHECK(pc.n == 7);
  REQUIRE(pc.lapses.size() == 3);
  CHECK(pc.lapses[0].count == 2);
  CHECK(pc.lapses[1].count == 1);
  CHECK(pc.lapses[2].count == 0);
  REQUIRE(pc.tails.has_value());
  CHECK(*pc.tails == 1);
  CHECK(pc.alternations.size() == 3);
  CHECK(pc.intervals.size() == 3);
}
