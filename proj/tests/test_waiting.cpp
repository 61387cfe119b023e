#include <doctest.h>

#include <cmath>

#include "bsrd/error.hpp"
#include "bsrd/waiting.hpp"
#include "oracles.hpp"

using namespace bsrd;

TEST_CASE("SQ pmf matches the run-length chain") {
  for (std::size_t s = 1; s <= 6; ++s) {
    for (const double lam : {0.2, 0.5, 0.8}) {
      CAPTURE(s);
      CAPTURE(lam);
      const auto d = sq_waiting_pmf(s, lam, 200);
      const auto ref = oracle::run_chain_pmf(s, lam, 200);
      REQUIRE(d.pmf.size() == 201);
      for (std::size_t k = 0; k <= 200; ++k) CHECK(std::fabs(d.pmf[k] - ref[k]) <= 1e-12);
      const double q = 1.0 - lam;
      const double mean = (1.0 - std::pow(q, s)) / (lam * std::pow(q, s));
      CHECK(d.mean == doctest::Approx(mean).epsilon(1e-14));
      if (mean < 40.0) CHECK(std::fabs(d.mean_with_tail() - mean) <= 1e-6);
      REQUIRE(d.tail_ratio.has_value());
      CHECK(*d.tail_ratio > 0.0);
      CHECK(*d.tail_ratio < 1.0);
    }
  }
}

TEST_CASE("SQ examples and edge statuses") {
  const auto two = sq_waiting_pmf(2, 0.5, 400);
  CHECK(two.mean == doctest::Approx(6.0));
  CHECK(std::fabs(two.mean_with_tail() - 6.0) <= 1e-9);

  // s = 1 is geometric on {1, 2, ...} with success probability q.
  const auto one = sq_waiting_pmf(1, 0.3, 100);
  CHECK(one.pmf[0] == 0.0);
  for (std::size_t k = 1; k <= 100; ++k) {
    CHECK(one.pmf[k] == doctest::Approx(std::pow(0.3, k - 1.0) * 0.7).epsilon(1e-12));
  }

  const auto never = sq_waiting_pmf(3, 1.0, 10);
  CHECK(never.status == WaitingStatus::NeverOccurs);
  CHECK(std::isinf(never.mean));
  for (const double p : never.pmf) CHECK(p == 0.0);

  const auto det = sq_waiting_pmf(3, 0.0, 10);
  CHECK(det.status == WaitingStatus::Deterministic);
  CHECK(det.pmf[3] == 1.0);
  CHECK(det.mean == 3.0);

  CHECK_THROWS_AS(sq_waiting_pmf(0, 0.5, 10), Error);
  CHECK_THROWS_AS(sq_waiting_pmf(5, 0.5, 4), Error);
  CHECK_THROWS_AS(sq_waiting_pmf(2, 1.5, 10), Error);
}

TEST_CASE("SQ pgf") {
  CHECK(sq_pgf_eval(2, 0.5, 0.0) == 0.0);
  for (std::size_t s = 1; s <= 5; ++s) {
    for (const double lam : {0.1, 0.5, 0.9}) CHECK(sq_pgf_eval(s, lam, 1.0) == doctest::Approx(1.0));
  }
  CHECK(sq_pgf_eval(1, 0.5, 0.5) == doctest::Approx(1.0 / 3.0));
  // Power series of the table against the closed form inside the unit disc.
  const auto d = sq_waiting_pmf(3, 0.4, 400);
  for (const double t : {-0.9, -0.3, 0.2, 0.7, 0.95}) {
    double series = 0.0;
    for (std::size_t k = 400; k-- > 0;) series = series * t + d.pmf[k];
    CHECK(sq_pgf_eval(3, 0.4, t) == doctest::Approx(series).epsilon(1e-10));
  }
  CHECK_THROWS_AS(sq_pgf_eval(2, 0.5, 1.5), Error);
  CHECK_THROWS_AS(sq_pgf_eval(2, 0.0, 0.5), Error);
}

TEST_CASE("FQ pmf is negative binomial") {
  for (std::size_t r = 1; r <= 5; ++r) {
    for (const double lam : {0.1, 0.5, 0.85}) {
      CAPTURE(r);
      CAPTURE(lam);
      const auto ref = oracle::count_chain_pmf(r, lam, 150);
      for (std::size_t k = 0; k <= 150; ++k) CHECK(std::fabs(fq_waiting_pmf(r, lam, k) - ref[k]) <= 1e-12);
      const auto d = fq_waiting_dist(r, lam);
      double total = 0.0;
      double mean = 0.0;
      for (std::size_t k = 0; k < d.pmf.size(); ++k) {
        total += d.pmf[k];
        mean += static_cast<double>(k) * d.pmf[k];
      }
      CHECK(std::fabs(total - 1.0) <= 1e-10);
      CHECK(d.mean == doctest::Approx(r / (1.0 - lam)));
      CHECK(mean == doctest::Approx(d.mean).epsilon(1e-8));
    }
  }
  CHECK(fq_waiting_pmf(3, 0.5, 2) == 0.0);
  CHECK(fq_waiting_pmf(1, 0.5, 1) == 0.5);
  CHECK(fq_waiting_dist(2, 1.0).status == WaitingStatus::NeverOccurs);
  const auto det = fq_waiting_dist(4, 0.0);
  CHECK(det.status == WaitingStatus::Deterministic);
  CHECK(det.pmf[4] == 1.0);
  CHECK_THROWS_AS(fq_waiting_pmf(0, 0.5, 3), Error);
}

TEST_CASE("proportion probability") {
  CHECK(proportion_probability(2, 0.5, 0.5) == doctest::Approx(0.75));
  CHECK(proportion_probability(10, 1.0, 0.3) == 1.0);
  CHECK(proportion_probability(10, 0.5, 0.0) == 1.0);
  CHECK(proportion_probability(10, 0.5, 1.0) == 0.0);
  for (std::size_t n = 1; n <= 30; ++n) {
    double cdf = 0.0;
    const std::size_t m = static_cast<std::size_t>(std::floor(n * 0.4));
    for (std::size_t k = 0; k <= m; ++k) cdf += oracle::binomial_pmf(n, k, 0.35);
    CHECK(proportion_probability(n, 0.4, 0.35) == doctest::Approx(cdf).epsilon(1e-12));
  }
  double prev = 1.0;
  for (double lam = 0.0; lam <= 1.0; lam += 0.05) {
    const double p = proportion_probability(40, 0.3, lam);
    CHECK(p <= prev + 1e-15);
    prev = p;
  }
  prev = 0.0;
  for (double delta = 0.0; delta <= 1.0; delta += 0.05) {
    const double p = proportion_probability(40, delta, 0.4);
    CHECK(p >= prev - 1e-15);
    prev = p;
  }
}
