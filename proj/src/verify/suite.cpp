#include <algorithm>
#include <cmath>
#include <string>

#include "bsrd/error.hpp"
#include "bsrd/exact.hpp"
#include "bsrd/format.hpp"
#include "bsrd/rng.hpp"
#include "bsrd/verify.hpp"
#include "bsrd/waiting.hpp"

namespace bsrd {
namespace {

using nlohmann::json;

struct Sizes {
  std::size_t clt_n, clt_R;
  std::size_t control_n, control_R;
  std::size_t lln_n, lln_R;
  double lln_bound;
  std::size_t mart_n, mart_R;
  std::size_t pattern_R;
  std::size_t z_l, z_K, z_R;
};

constexpr Sizes kAcceptance{4000, 5000, 1000, 5000, 100'000, 100, 0.01,
                            1000, 10'000, 100'000, 20, 100'000, 10'000};
constexpr Sizes kQuick{400, 2000, 200, 1000, 10'000, 50, 0.05, 200, 1000, 20'000, 10, 20'000, 2000};

BsrdProcess linear_process(double lambda, std::size_t n) {
  return BsrdProcess(family::Linear{0.5, ParamSeq::constant(0.5), ParamSeq::constant(0.3)},
                     switching::IID{lambda}, n);
}

TestReport named(TestReport r, std::string name, std::uint64_t master, std::size_t slot) {
  r.name = std::move(name);
  r.provenance["master_seed"] = master;
  r.provenance["slot"] = slot;
  return r;
}

/// lambda = 0 reduction of the exact law to Binomial(n, 1/2); no simulation.
TestReport exact_reduction(std::size_t n) {
  const BsrdProcess indep = linear_process(0.0, n);
  const SnDistribution d = exact_sn_distribution(indep, n);
  double worst = 0.0;
  for (std::size_t s = 0; s <= n; ++s) {
    const double log_binom = std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
    const double binom = std::exp(log_binom + static_cast<double>(n) * std::log(0.5));
    worst = std::max(worst, std::fabs(d.probs[s] - binom));
  }
  TestReport r;
  r.name = "exact_reduction";
  r.statistic = worst;
  r.threshold = 1e-12;
  r.checks.push_back(Check::at_most("max_abs_diff_binomial", worst, 1e-12));
  r.provenance = json{{"n", n}, {"model", "linear alpha=0.5 beta=0.3, lambda=0 vs Binomial(n, 1/2)"}};
  return r;
}

TestReport sq_mean() {
  const WaitingTimeDist d = sq_waiting_pmf(2, 0.5, 400);
  const double with_tail = d.mean_with_tail();
  TestReport r;
  r.name = "sq_waiting_mean";
  r.statistic = with_tail;
  r.threshold = 1e-6;
  r.checks.push_back(Check::at_most("closed_form_abs_diff", std::fabs(d.mean - 6.0), 1e-12));
  r.checks.push_back(Check::at_most("pmf_mean_abs_diff", std::fabs(with_tail - d.mean), 1e-6));
  r.provenance = json{{"s", 2}, {"lambda", 0.5}, {"horizon", 400}};
  r.details = json{{"closed_form_mean", d.mean}, {"pmf_mean_with_tail", with_tail}};
  return r;
}

}  // namespace

bool SuiteResult::pass() const {
  if (reports.empty()) return false;
  for (const TestReport& r : reports) {
    if (!r.pass()) return false;
  }
  return true;
}

json SuiteResult::to_json() const {
  json rs = json::array();
  for (const TestReport& r : reports) rs.push_back(r.to_json());
  return json{{"suite", suite},
              {"seed", seed},
              {"version", BSRD_VERSION},
              {"pass", pass()},
              {"reports", std::move(rs)}};
}

std::string SuiteResult::summary_csv() const {
  std::string out = "test,statistic,threshold,p_value,pass\n";
  for (const TestReport& r : reports) {
    out += r.name + "," + shortest(r.statistic) + "," + shortest(r.threshold) + "," +
           (r.p_value ? shortest(*r.p_value) : std::string()) + "," + (r.pass() ? "true" : "false") +
           "\n";
  }
  return out;
}

SuiteResult run_verification_suite(const SuiteOptions& options) {
  Sizes z;
  if (options.suite == "acceptance") {
    z = kAcceptance;
  } else if (options.suite == "quick") {
    z = kQuick;
  } else {
    throw Error(ErrorKind::Config, "suite: must be \"acceptance\" or \"quick\", got \"" +
                                       options.suite + "\"");
  }
  const std::uint64_t master = options.seed;
  const unsigned w = options.workers;
  // Test slot k draws its replicate keys from the sub-seed stream_word(master, k).
  auto key = [&](std::size_t slot) { return stream_word(master, slot); };

  SuiteResult out;
  out.suite = options.suite;
  out.seed = master;
  auto& rs = out.reports;

  // The classical control must come first: it calibrates the CLT harness.
  const BsrdProcess classical = linear_process(0.0, z.clt_n);
  const Ensemble classical_e = run_ensemble(classical, z.clt_n, z.clt_R, key(0), {false, w});
  rs.push_back(named(test_clt(classical_e, classical), "clt_classical", master, 0));

  const BsrdProcess bsrd = linear_process(0.5, std::max(z.clt_n, std::max(z.lln_n, z.mart_n)));
  const Ensemble bsrd_e = run_ensemble(bsrd, z.clt_n, z.clt_R, key(1), {false, w});
  rs.push_back(named(test_clt(bsrd_e, bsrd), "clt_bsrd", master, 1));

  rs.push_back(named(test_lil_property(classical_e, classical), "lil_property_classical", master, 0));
  rs.push_back(named(test_lil_property(bsrd_e, bsrd), "lil_property_bsrd", master, 1));

  rs.push_back(named(clt_negative_control(z.control_n, z.control_R, key(2), w), "clt_negative_control",
                     master, 2));

  const Ensemble lln_e = run_ensemble(bsrd, z.lln_n, z.lln_R, key(3), {false, w});
  rs.push_back(named(test_lln(lln_e, bsrd, z.lln_bound), "lln", master, 3));

  rs.push_back(named(test_martingale_bound(bsrd, z.mart_n, z.mart_R, key(4), w), "martingale_bound",
                     master, 4));

  const SwitchModel bern10 = switching::PoissonTrials{1.0, 0.0};
  rs.push_back(named(verify_pattern_expectations(switching::IID{0.5}, 3, 1, z.pattern_R, key(5), w),
                     "patterns_iid_half_n3_l1", master, 5));
  rs.push_back(named(verify_pattern_expectations(bern10, 10, 1, z.pattern_R, key(6), w),
                     "patterns_bern10_n10_l1", master, 6));
  rs.push_back(named(verify_pattern_expectations(bern10, 100, 1, z.pattern_R, key(7), w),
                     "patterns_bern10_n100_l1", master, 7));
  rs.push_back(named(verify_pattern_expectations(bern10, 3, 1, z.pattern_R, key(8), w),
                     "patterns_bern10_n3_l1", master, 8));
  rs.push_back(named(verify_pattern_expectations(switching::IID{0.0}, 100, z.z_l, 100, key(9), w),
                     "patterns_iid_zero_control", master, 9));

  rs.push_back(named(poisson_limit_experiment(z.z_l, z.z_K, z.z_R, key(10), w), "poisson_limit",
                     master, 10));

  rs.push_back(exact_reduction(200));
  rs.push_back(sq_mean());
  return out;
}

}  // namespace bsrd
