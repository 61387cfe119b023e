#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bsrd/error.hpp"
#include "bsrd/exact.hpp"
#include "bsrd/format.hpp"
#include "bsrd/ks.hpp"
#include "bsrd/limits.hpp"
#include "bsrd/model_json.hpp"
#include "bsrd/parallel.hpp"
#include "bsrd/patterns.hpp"
#include "bsrd/rng.hpp"
#include "bsrd/verify.hpp"

namespace bsrd {
namespace {

using nlohmann::json;

constexpr const char* kSeedRule = "replicate r uses the counter stream keyed by derive_seed(seed, r)";

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

template <class Range>
Moments moments(const Range& values) {
  Moments m;
  const double count = static_cast<double>(values.size());
  if (values.size() == 0) return m;
  double sum = 0.0;
  for (const auto v : values) sum += static_cast<double>(v);
  m.mean = sum / count;
  double ss = 0.0;
  for (const auto v : values) {
    const double d = static_cast<double>(v) - m.mean;
    ss += d * d;
  }
  m.variance = values.size() > 1 ? ss / (count - 1.0) : 0.0;
  return m;
}

json ensemble_provenance(const Ensemble& e) {
  return json{{"process", e.process},
              {"n", e.n},
              {"replicates", e.replicates},
              {"seed", e.seed},
              {"seed_rule", kSeedRule}};
}

/// Empirical-SE comparison of a sample mean with its exact value. A zero SE
/// (constant sample) demands agreement to 1e-12 instead.
Check mean_check(const std::string& name, const Moments& m, std::size_t replicates,
                 double expected, double bands, json& details) {
  const double se = std::sqrt(m.variance / static_cast<double>(replicates));
  const double diff = std::fabs(m.mean - expected);
  details[name] = json{{"empirical_mean", m.mean},
                       {"expected", expected},
                       {"standard_error", se},
                       {"abs_diff", diff}};
  if (se == 0.0) return Check::at_most(name + "_abs_diff", diff, 1e-12);
  details[name]["standard_errors"] = diff / se;
  return Check::at_most(name + "_standard_errors", diff / se, bands);
}

}  // namespace

// ---------------------------------------------------------------------------
// Checks and reports

Check Check::less(std::string name, double value, double bound) {
  return {std::move(name), value, Op::Less, 0.0, bound};
}
Check Check::greater(std::string name, double value, double bound) {
  return {std::move(name), value, Op::Greater, bound, 0.0};
}
Check Check::at_most(std::string name, double value, double bound) {
  return {std::move(name), value, Op::AtMost, 0.0, bound};
}
Check Check::within(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, Op::Within, lo, hi};
}

bool Check::pass() const {
  switch (op) {
    case Op::Less: return value < upper;
    case Op::Greater: return value > lower;
    case Op::AtMost: return value <= upper;
    case Op::Within: return value >= lower && value <= upper;
  }
  return false;
}

json Check::to_json() const {
  json j{{"name", name}, {"value", value}};
  switch (op) {
    case Op::Less: j["rule"] = "<"; j["bound"] = upper; break;
    case Op::Greater: j["rule"] = ">"; j["bound"] = lower; break;
    case Op::AtMost: j["rule"] = "<="; j["bound"] = upper; break;
    case Op::Within: j["rule"] = "within"; j["bound"] = json::array({lower, upper}); break;
  }
  j["pass"] = pass();
  return j;
}

bool TestReport::pass() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass(); });
}

json TestReport::to_json() const {
  json cs = json::array();
  for (const Check& c : checks) cs.push_back(c.to_json());
  json j{{"name", name},
         {"statistic", statistic},
         {"threshold", threshold},
         {"p_value", p_value ? json(*p_value) : json(nullptr)},
         {"pass", pass()},
         {"checks", std::move(cs)},
         {"provenance", provenance},
         {"details", details}};
  return j;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t m = std::max(p.size(), q.size());
  double l1 = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double a = k < p.size() ? p[k] : 0.0;
    const double b = k < q.size() ? q[k] : 0.0;
    l1 += std::fabs(a - b);
  }
  return 0.5 * l1;
}

// ---------------------------------------------------------------------------
// Limit theorems

TestReport test_lln(const Ensemble& ensemble, const BsrdProcess& proc, double bound) {
  const std::size_t n = ensemble.n;
  const RegimeReport regime = regime_report(proc, n);
  if (regime.cond1 != Cond1Class::Holds) {
    throw Error(ErrorKind::Refused,
                "LLN test needs condition (cond1) to hold, i.e. sum (1 - beta_k lambda_k) / (1 + k) "
                "to diverge; it is classified as " +
                    std::string(cond1_name(regime.cond1)) + " for this process");
  }
  const double mean_n = exact_mean_sn(proc, n).back();
  double worst = 0.0;
  for (const std::int64_t s : ensemble.terminal) {
    worst = std::max(worst, std::fabs(static_cast<double>(s) - mean_n) / static_cast<double>(n));
  }
  TestReport r;
  r.name = "lln";
  r.statistic = worst;
  r.threshold = bound;
  r.checks.push_back(Check::less("max_abs_deviation_over_n", worst, bound));
  r.provenance = ensemble_provenance(ensemble);
  r.provenance["tolerances"] = json{{"bound", bound}};
  r.details = json{{"exact_mean", mean_n}, {"cond1", cond1_name(regime.cond1)}};
  return r;
}

TestReport test_clt(const Ensemble& ensemble, const BsrdProcess& proc, const CltBands& bands) {
  const std::size_t n = ensemble.n;
  const RegimeReport regime = regime_report(proc, n);
  if (regime.degenerate) {
    throw Error(ErrorKind::Refused,
                "CLT test refused: beta_k lambda_k = 1 for every k, so a_n = n and the "
                "limit of (S_n - E S_n) / n is not Gaussian");
  }
  const LimitNormalizer norm(proc, n);
  std::vector<double> z(ensemble.terminal.size());
  for (std::size_t r = 0; r < z.size(); ++r) z[r] = norm.clt(ensemble.terminal[r]);
  const Moments m = moments(z);
  const KsResult ks = ks_test(z);

  TestReport r;
  r.name = "clt";
  r.statistic = ks.statistic;
  r.threshold = bands.ks_p;
  r.p_value = ks.p_value;
  r.checks.push_back(Check::less("abs_sample_mean", std::fabs(m.mean), bands.mean_abs));
  r.checks.push_back(Check::within("sample_variance", m.variance, bands.var_lo, bands.var_hi));
  r.checks.push_back(Check::greater("ks_p_value", ks.p_value, bands.ks_p));
  r.provenance = ensemble_provenance(ensemble);
  r.provenance["tolerances"] = json{{"abs_mean", bands.mean_abs},
                                    {"variance", json::array({bands.var_lo, bands.var_hi})},
                                    {"ks_p", bands.ks_p}};
  r.details = json{{"sample_mean", m.mean},
                   {"sample_variance", m.variance},
                   {"ks_statistic", ks.statistic},
                   {"exact_mean", norm.mean()},
                   {"a_n", norm.a_n()},
                   {"B_n", norm.B_n()},
                   {"cond1", cond1_name(regime.cond1)},
                   {"flags", regime.flags}};
  return r;
}

TestReport clt_negative_control(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                unsigned workers, double ks_p) {
  const BsrdProcess proc(family::Linear{0.5, ParamSeq::constant(0.0), ParamSeq::constant(1.0)},
                         switching::IID{1.0}, n);
  const Ensemble e = run_ensemble(proc, n, replicates, seed, {false, workers});

  std::string refusal;
  try {
    (void)test_clt(e, proc);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Refused) throw;
    refusal = err.what();
  }

  // Standardize with the sample moments: the test is of shape, not of scaling.
  const Moments m = moments(e.terminal);
  const double sd = std::sqrt(m.variance);
  std::vector<double> z(e.terminal.size(), 0.0);
  if (sd > 0.0) {
    for (std::size_t r = 0; r < z.size(); ++r) {
      z[r] = (static_cast<double>(e.terminal[r]) - m.mean) / sd;
    }
  }
  const KsResult ks = ks_test(z);

  TestReport r;
  r.name = "clt_negative_control";
  r.statistic = ks.statistic;
  r.threshold = ks_p;
  r.p_value = ks.p_value;
  r.checks.push_back(Check::at_most("clt_not_refused", refusal.empty() ? 1.0 : 0.0, 0.0));
  r.checks.push_back(Check::less("ks_p_value", ks.p_value, ks_p));
  r.provenance = ensemble_provenance(e);
  r.provenance["tolerances"] = json{{"ks_p", ks_p}};
  r.details = json{{"refusal", refusal},
                   {"sample_mean", m.mean},
                   {"sample_variance", m.variance},
                   {"ks_statistic", ks.statistic}};
  return r;
}

TestReport test_lil_property(const Ensemble& ensemble, const BsrdProcess& proc) {
  const LimitNormalizer norm(proc, ensemble.n);
  const double log_log = std::log(std::log(norm.B_n()));
  const bool applicable = log_log >= 1.0;

  std::size_t non_finite = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  for (const std::int64_t s : ensemble.terminal) {
    const double lil = norm.lil(s);
    const double clt = norm.clt(s);
    if (!std::isfinite(lil)) {
      ++non_finite;
      continue;
    }
    if (clt != 0.0) worst_ratio = std::max(worst_ratio, std::fabs(lil) / std::fabs(clt));
    if (applicable && std::fabs(lil) > std::fabs(clt)) ++violations;
  }

  TestReport r;
  r.name = "lil_property";
  r.statistic = worst_ratio;
  r.threshold = 1.0;
  r.checks.push_back(Check::at_most("non_finite_lil", static_cast<double>(non_finite), 0.0));
  r.checks.push_back(Check::at_most("lil_exceeds_clt", static_cast<double>(violations), 0.0));
  r.provenance = ensemble_provenance(ensemble);
  r.details = json{{"B_n", norm.B_n()},
                   {"log_log_B_n", log_log},
                   {"inequality_applies", applicable},
                   {"max_abs_lil_over_abs_clt", worst_ratio}};
  return r;
}

TestReport test_martingale_bound(const BsrdProcess& proc, std::size_t n, std::size_t replicates,
                                 std::uint64_t seed, unsigned workers) {
  if (replicates == 0) throw Error(ErrorKind::Domain, "martingale test needs R >= 1");
  const LimitConstants constants = limit_constants(proc, n);
  const std::vector<double> means = exact_mean_sn(proc, n);

  const unsigned w = resolve_workers(workers);
  std::vector<PathSample> paths(w);
  std::vector<std::vector<double>> scratch(w);
  std::vector<double> ratio(replicates, 0.0);
  std::vector<std::uint8_t> violated(replicates, 0);
  parallel_for(replicates, w, [&](std::size_t r, unsigned k) {
    simulate_path_into(proc, n, derive_seed(seed, r), paths[k], scratch[k]);
    try {
      const MartingaleTrace t = martingale_trace(constants, means, paths[k]);
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(t.D[i]) / t.bound[i]);
      ratio[r] = worst;
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::InternalConsistency) throw;
      violated[r] = 1;
      ratio[r] = std::numeric_limits<double>::infinity();
    }
  });

  std::size_t violations = 0;
  double worst = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    violations += violated[r];
    worst = std::max(worst, ratio[r]);
  }
  TestReport rep;
  rep.name = "martingale_bound";
  rep.statistic = worst;
  rep.threshold = 1.0;
  rep.checks.push_back(Check::at_most("paths_with_violation", static_cast<double>(violations), 0.0));
  rep.provenance = json{{"process", process_to_json(proc)},
                        {"n", n},
                        {"replicates", replicates},
                        {"seed", seed},
                        {"seed_rule", kSeedRule},
                        {"tolerances", json{{"relative_slack", 1e-12}}}};
  rep.details = json{{"max_abs_D_over_bound", worst}, {"a_n", constants.a.back()}};
  return rep;
}

// ---------------------------------------------------------------------------
// Patterns

TestReport verify_pattern_expectations(const SwitchModel& sw, std::size_t n, std::size_t l,
                                       std::size_t replicates, std::uint64_t seed,
                                       unsigned workers, double bands) {
  if (replicates < 2) throw Error(ErrorKind::Domain, "pattern verification needs R >= 2");
  if (l == 0 || l > n) {
    throw Error(ErrorKind::Domain, "pattern verification needs 1 <= l <= n, got n=" + shortest(n) +
                                       ", l=" + shortest(l));
  }
  validate_switch(sw, n);
  const std::vector<double> lambdas = switch_probs(sw, n);
  const bool with_a = n > 2 * l;
  const bool with_t = n > 2;
  const bool with_z = n >= l + 1;

  const unsigned w = resolve_workers(workers);
  std::vector<std::vector<std::uint8_t>> bits(w);
  std::vector<std::vector<double>> scratch(w);
  std::vector<std::uint64_t> m(replicates), a(replicates), t(replicates), z(replicates);
  parallel_for(replicates, w, [&](std::size_t r, unsigned k) {
    simulate_switch_into(lambdas, derive_seed(seed, r), bits[k], scratch[k]);
    m[r] = count_lapses(bits[k], l);
    if (with_a) a[r] = count_alternations(bits[k], l);
    if (with_t) t[r] = count_tails(bits[k]);
    if (with_z) z[r] = count_z(bits[k], l);
  });

  TestReport rep;
  rep.name = "pattern_expectations";
  json details = json::object();
  rep.checks.push_back(
      mean_check("M_l", moments(m), replicates, expected_lapse_count(sw, n, l), bands, details));
  if (with_a) {
    rep.checks.push_back(mean_check("A_l", moments(a), replicates,
                                    expected_alternation_count(sw, n, l), bands, details));
  }
  if (with_t) {
    rep.checks.push_back(
        mean_check("T_2", moments(t), replicates, expected_tail_count(sw, n), bands, details));
  }
  if (with_z) {
    rep.checks.push_back(mean_check("Z_l", moments(z), replicates, expected_z(sw, l, n).partial,
                                    bands, details));
  }
  double worst = 0.0;
  for (const Check& c : rep.checks) {
    if (c.op == Check::Op::AtMost && c.upper == bands) worst = std::max(worst, c.value);
  }
  rep.statistic = worst;
  rep.threshold = bands;
  rep.provenance = json{{"switch", switch_to_json(sw)},
                        {"n", n},
                        {"l", l},
                        {"replicates", replicates},
                        {"seed", seed},
                        {"seed_rule", kSeedRule},
                        {"tolerances", json{{"standard_errors", bands}, {"zero_se_abs", 1e-12}}}};
  rep.details = std::move(details);
  return rep;
}

TestReport poisson_limit_experiment(std::size_t l, std::size_t truncation, std::size_t replicates,
                                    std::uint64_t seed, unsigned workers, double bands,
                                    double tv_bound) {
  if (replicates < 2) throw Error(ErrorKind::Domain, "Poisson experiment needs R >= 2");
  const SwitchModel sw = switching::PoissonTrials{1.0, 0.0};
  const ZExpectation expected = expected_z(sw, l, truncation);
  const std::vector<double> lambdas = switch_probs(sw, truncation);

  const unsigned w = resolve_workers(workers);
  std::vector<std::vector<std::uint8_t>> bits(w);
  std::vector<std::vector<double>> scratch(w);
  std::vector<std::uint64_t> z(replicates);
  parallel_for(replicates, w, [&](std::size_t r, unsigned k) {
    simulate_switch_into(lambdas, derive_seed(seed, r), bits[k], scratch[k]);
    z[r] = count_z(bits[k], l);
  });

  const std::uint64_t top = *std::max_element(z.begin(), z.end());
  std::vector<double> empirical(top + 1, 0.0);
  for (const std::uint64_t v : z) empirical[v] += 1.0;
  for (double& v : empirical) v /= static_cast<double>(replicates);

  // Poisson(1/l) over the same support; its remaining mass lies where the
  // empirical law has none and counts in full towards the L1 distance.
  const double mu = 1.0 / static_cast<double>(l);
  std::vector<double> poisson(top + 1);
  double term = std::exp(-mu);
  double covered = 0.0;
  for (std::size_t k = 0; k <= top; ++k) {
    poisson[k] = term;
    covered += term;
    term *= mu / static_cast<double>(k + 1);
  }
  const double tv = total_variation(empirical, poisson) + 0.5 * std::max(0.0, 1.0 - covered);

  TestReport rep;
  rep.name = "poisson_limit";
  json details = json::object();
  rep.checks.push_back(mean_check("Z_l", moments(z), replicates, expected.partial, bands, details));
  rep.checks.push_back(Check::less("tv_distance", tv, tv_bound));
  rep.statistic = tv;
  rep.threshold = tv_bound;
  details["poisson_mean"] = mu;
  details["empirical_pmf"] = empirical;
  details["poisson_pmf"] = poisson;
  rep.details = std::move(details);
  rep.provenance = json{{"switch", switch_to_json(sw)},
                        {"l", l},
                        {"truncation", truncation},
                        {"replicates", replicates},
                        {"seed", seed},
                        {"seed_rule", kSeedRule},
                        {"tolerances", json{{"standard_errors", bands}, {"tv", tv_bound}}},
                        {"scope", "marginal law of one Z_l; joint independence is not tested"}};
  return rep;
}

}  // namespace bsrd
