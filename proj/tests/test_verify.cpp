#include <doctest.h>

#include <cmath>
#include <limits>

#include "bsrd/error.hpp"
#include "bsrd/exact.hpp"
#include "bsrd/parallel.hpp"
#include "bsrd/verify.hpp"

using namespace bsrd;

namespace {

BsrdProcess linear_proc(double alpha, double beta, double lambda, std::size_t n,
                        std::optional<double> alpha0 = std::nullopt) {
  return BsrdProcess(family::Linear{alpha0.value_or(alpha), ParamSeq::constant(alpha),
                                    ParamSeq::constant(beta)},
                     switching::IID{lambda}, n);
}

EnsembleOptions with_workers(unsigned w) {
  EnsembleOptions o;
  o.workers = w;
  return o;
}

}  // namespace

TEST_CASE("parallel_for covers every index once and rethrows the lowest failure") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i, unsigned) { hits[i] += 1; });
  for (const int h : hits) CHECK(h == 1);
  try {
    parallel_for(100, 3, [](std::size_t i, unsigned) {
      if (i == 17 || i == 60) throw Error(ErrorKind::Domain, "at " + std::to_string(i));
    });
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "at 17");
  }
}

TEST_CASE("ensembles do not depend on the worker count") {
  const BsrdProcess p(linear_proc(0.3, 0.6, 0.7, 300, 0.5));
  const Ensemble one = run_ensemble(p, 300, 257, 11, with_workers(1));
  const Ensemble three = run_ensemble(p, 300, 257, 11, with_workers(3));
  CHECK(one.terminal == three.terminal);
  CHECK(one.mean == three.mean);
  CHECK(one.variance == three.variance);
  CHECK(one.empirical == three.empirical);
  CHECK(one.process == three.process);

  const Ensemble other = run_ensemble(p, 300, 257, 12, with_workers(1));
  CHECK(other.terminal != one.terminal);
  CHECK_THROWS_AS(run_ensemble(p, 300, 0, 1), Error);
  CHECK_THROWS_AS(run_ensemble(p, 301, 10, 1), Error);
}

TEST_CASE("ensemble summaries") {
  const BsrdProcess all(linear_proc(1.0, 0.0, 0.5, 40));
  const Ensemble e = run_ensemble(all, 40, 100, 3);
  for (const auto t : e.terminal) CHECK(t == 40);
  CHECK(e.mean == 40.0);
  CHECK(e.variance == 0.0);
  CHECK(e.empirical[40] == 1.0);

  const std::size_t n = 50;
  const BsrdProcess p(linear_proc(0.2, 0.7, 0.6, n, 0.5));
  const Ensemble big = run_ensemble(p, n, 10'000, 77);
  const SnDistribution d = exact_sn_distribution(p, n);
  CHECK(std::fabs(big.mean - d.mean) <= 4.0 * std::sqrt(d.variance / 10'000.0));
  CHECK(big.variance == doctest::Approx(d.variance).epsilon(0.1));
  double total = 0.0;
  for (const double q : big.empirical) total += q;
  CHECK(total == doctest::Approx(1.0));

  EnsembleOptions keep;
  keep.retain_paths = true;
  const Ensemble kept = run_ensemble(p, n, 5, 77, keep);
  REQUIRE(kept.paths.size() == 5);
  for (std::size_t r = 0; r < 5; ++r) CHECK(kept.paths[r].partial_sums.back() == kept.terminal[r]);
  CHECK(kept.terminal == std::vector<std::int64_t>(big.terminal.begin(), big.terminal.begin() + 5));
}

TEST_CASE("checks are pure functions of their inputs") {
  CHECK(Check::less("x", 0.5, 1.0).pass());
  CHECK_FALSE(Check::less("x", 1.0, 1.0).pass());
  CHECK(Check::at_most("x", 1.0, 1.0).pass());
  CHECK(Check::greater("x", 2.0, 1.0).pass());
  CHECK_FALSE(Check::greater("x", 1.0, 1.0).pass());
  CHECK(Check::within("x", 1.0, 0.9, 1.1).pass());
  CHECK(Check::within("x", 0.9, 0.9, 1.1).pass());
  CHECK_FALSE(Check::within("x", 1.2, 0.9, 1.1).pass());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(Check::less("x", nan, 1.0).pass());
  CHECK_FALSE(Check::within("x", nan, 0.0, 1.0).pass());
  const Check c = Check::less("x", 0.5, 1.0);
  CHECK(c.pass() == c.pass());
  CHECK(c.to_json() == c.to_json());

  TestReport empty;
  CHECK_FALSE(empty.pass());
  empty.checks.push_back(Check::less("a", 0.0, 1.0));
  CHECK(empty.pass());
  empty.checks.push_back(Check::less("b", 2.0, 1.0));
  CHECK_FALSE(empty.pass());
}

TEST_CASE("lln test") {
  const BsrdProcess all(linear_proc(1.0, 0.0, 0.5, 500));
  const TestReport r = test_lln(run_ensemble(all, 500, 20, 1), all);
  CHECK(r.statistic == 0.0);
  CHECK(r.pass());

  const BsrdProcess p(linear_proc(0.5, 0.3, 0.5, 20'000));
  const TestReport q = test_lln(run_ensemble(p, 20'000, 50, 5), p, 0.02);
  CHECK(q.pass());
  CHECK(q.statistic < 0.02);

  const BsrdProcess deg(linear_proc(0.0, 1.0, 1.0, 100, 0.5));
  try {
    (void)test_lln(run_ensemble(deg, 100, 10, 1), deg);
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Refused);
  }
}

TEST_CASE("clt test, negative control and lil property") {
  const BsrdProcess p(linear_proc(0.5, 0.3, 0.5, 600));
  const Ensemble e = run_ensemble(p, 600, 3000, 21);
  const TestReport clt = test_clt(e, p);
  CHECK(clt.pass());
  REQUIRE(clt.p_value.has_value());
  CHECK(*clt.p_value > 0.001);

  const BsrdProcess deg(linear_proc(0.0, 1.0, 1.0, 300, 0.5));
  try {
    (void)test_clt(run_ensemble(deg, 300, 100, 1), deg);
    FAIL("expected a refusal");
  } catch (const Error& e2) {
    CHECK(e2.kind() == ErrorKind::Refused);
  }
  const TestReport control = clt_negative_control(300, 1000, 5);
  CHECK(control.pass());
  REQUIRE(control.p_value.has_value());
  CHECK(*control.p_value < 0.001);

  const TestReport lil = test_lil_property(e, p);
  CHECK(lil.pass());
  CHECK(lil.details.contains("inequality_applies"));

  const BsrdProcess tiny(linear_proc(0.5, 0.3, 0.5, 10));
  CHECK_THROWS_AS(test_lil_property(run_ensemble(tiny, 10, 100, 1), tiny), Error);
}

TEST_CASE("martingale bound test") {
  const BsrdProcess p(linear_proc(0.3, 0.6, 0.8, 200, 0.5));
  const TestReport r = test_martingale_bound(p, 200, 500, 3);
  CHECK(r.pass());
  CHECK(r.statistic <= 1.0);
}

TEST_CASE("pattern experiments") {
  const TestReport iid = verify_pattern_expectations(switching::IID{0.5}, 3, 1, 20'000, 8);
  CHECK(iid.pass());
  const TestReport bern = verify_pattern_expectations(switching::PoissonTrials{1.0, 0.0}, 30, 2, 20'000, 9);
  CHECK(bern.pass());
  // A constant string has zero standard error and is compared exactly.
  const TestReport zero = verify_pattern_expectations(switching::IID{0.0}, 40, 3, 50, 10);
  CHECK(zero.pass());

  const TestReport pois = poisson_limit_experiment(5, 2000, 4000, 12);
  CHECK(pois.pass());

  CHECK(total_variation({0.5, 0.5}, {0.5, 0.5}) == 0.0);
  CHECK(total_variation({1.0}, {0.0, 1.0}) == 1.0);
  CHECK(total_variation({0.5, 0.5}, {0.25, 0.25, 0.5}) == doctest::Approx(0.5));
}

TEST_CASE("quick suite is deterministic and independent of workers") {
  SuiteOptions a;
  a.suite = "quick";
  a.seed = 42;
  a.workers = 1;
  SuiteOptions b = a;
  b.workers = 3;
  const SuiteResult ra = run_verification_suite(a);
  const SuiteResult rb = run_verification_suite(b);
  CHECK(ra.pass());
  CHECK(ra.to_json().dump() == rb.to_json().dump());
  CHECK(ra.summary_csv() == rb.summary_csv());
  CHECK(ra.summary_csv().rfind("test,statistic,threshold,p_value,pass\n", 0) == 0);
  CHECK(ra.to_json().dump().find("workers") == std::string::npos);

  SuiteOptions bad = a;
  bad.suite = "nope";
  try {
    (void)run_verification_suite(bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}
