#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsrd/model.hpp"
#include "bsrd/process.hpp"
#include "bsrd/simulate.hpp"

namespace bsrd {

struct EnsembleOptions {
  bool retain_paths = false;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// R terminal values of S_n. Replicate r runs on the stream derive_seed(seed, r),
/// so the contents depend only on (process, n, R, seed).
struct Ensemble {
  nlohmann::json process;
  std::size_t n = 0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> terminal;
  std::vector<PathSample> paths;    // empty unless retained
  double mean = 0.0;
  double variance = 0.0;            // unbiased
  std::vector<double> empirical;    // empirical[s] = #{S_n = s} / R
};

/// Throws Error(Domain) when R = 0 or n = 0 or n exceeds the horizon.
Ensemble run_ensemble(const BsrdProcess& proc, std::size_t n, std::size_t replicates,
                      std::uint64_t seed, const EnsembleOptions& options = {});

/// One comparison of a value against fixed bounds.
struct Check {
  enum class Op { Less, Greater, AtMost, Within };
  std::string name;
  double value = 0.0;
  Op op = Op::Less;
  double lower = 0.0;
  double upper = 0.0;

  static Check less(std::string name, double value, double bound);
  static Check greater(std::string name, double value, double bound);
  static Check at_most(std::string name, double value, double bound);
  static Check within(std::string name, double value, double lo, double hi);

  /// Pure function of (value, op, bounds); NaN never passes.
  bool pass() const;
  nlohmann::json to_json() const;
};

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  std::optional<double> p_value;
  std::vector<Check> checks;
  nlohmann::json provenance = nlohmann::json::object();
  nlohmann::json details = nlohmann::json::object();

  /// AND of all checks; false when there are none.
  bool pass() const;
  nlohmann::json to_json() const;
};

/// max_r |S_n - E S_n| / n < bound. Throws Error(Refused) unless condition
/// (cond1) is classified as holding.
TestReport test_lln(const Ensemble& ensemble, const BsrdProcess& proc, double bound = 0.01);

struct CltBands {
  double mean_abs = 0.05;
  double var_lo = 0.9;
  double var_hi = 1.1;
  double ks_p = 0.001;
};

/// Normal approximation of (S_n - E S_n) / (a_n B_n). Throws Error(Refused)
/// in the degenerate regime beta_k lambda_k = 1.
TestReport test_clt(const Ensemble& ensemble, const BsrdProcess& proc, const CltBands& bands = {});

/// The degenerate regime alpha_0 = 1/2, alpha = 0, beta = 1, lambda = 1: the
/// empirically standardized S_n must be rejected by the KS test (p below the
/// threshold).
TestReport clt_negative_control(std::size_t n, std::size_t replicates, std::uint64_t seed,
                                unsigned workers = 0, double ks_p = 0.001);

/// lil_statistic is finite on every replicate and |lil| <= |clt| whenever
/// log log B_n >= 1. Throws Error(Domain) if B_n <= e.
TestReport test_lil_property(const Ensemble& ensemble, const BsrdProcess& proc);

/// |D_i| <= 2 / a_i along R simulated paths; passes with zero violations.
TestReport test_martingale_bound(const BsrdProcess& proc, std::size_t n, std::size_t replicates,
                                 std::uint64_t seed, unsigned workers = 0);

/// Empirical means of M_l, A_l, T_2 and Z_l over R switch strings against the
/// exact expectations, each within `bands` empirical standard errors.
TestReport verify_pattern_expectations(const SwitchModel& sw, std::size_t n, std::size_t l,
                                       std::size_t replicates, std::uint64_t seed,
                                       unsigned workers = 0, double bands = 4.0);

/// Truncated Z_l under Bern(1, 0) against Poisson(1/l): mean within `bands`
/// standard errors of the partial-sum expectation and TV distance < tv_bound.
TestReport poisson_limit_experiment(std::size_t l, std::size_t truncation, std::size_t replicates,
                                    std::uint64_t seed, unsigned workers = 0, double bands = 3.0,
                                    double tv_bound = 0.05);

/// Half the L1 distance; the shorter vector is padded with zeros.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

struct SuiteOptions {
  std::string suite = "acceptance";  // "acceptance" or "quick"
  std::uint64_t seed = 42;
  unsigned workers = 0;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<TestReport> reports;

  bool pass() const;
  /// Independent of the worker count and of wall-clock time.
  nlohmann::json to_json() const;
  /// Header test,statistic,threshold,p_value,pass; one row per report.
  std::string summary_csv() const;
};

/// Runs the suite in a fixed order; the classical lambda = 0 CLT control runs
/// first. Throws Error(Config) for an unknown suite name.
SuiteResult run_verification_suite(const SuiteOptions& options);

}  // namespace bsrd
