#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsrd/process.hpp"
#include "bsrd/simulate.hpp"

namespace bsrd {

/// Normalizing sequences of the linear family; element k refers to index k + 1.
///   a_n = prod_{k<n} (1 + beta_k lambda_k / k)
///   A_n^2 = sum_{i<=n} 1 / a_i^2,  B_n^2 = sum_{i<=n} p_i (1 - p_i) / a_i^2
///   slln_partial_n = sum_{k<=n} (1 - beta_k lambda_k) / (1 + k)
struct LimitConstants {
  std::vector<double> a;
  std::vector<double> A;
  std::vector<double> B;
  std::vector<double> slln_partial;
  std::vector<double> ratio;  // A_n / B_n, +inf while B_n = 0

  std::size_t size() const noexcept { return a.size(); }
};

/// Throws Error(UnsupportedFamily) for non-linear dependence models and
/// Error(InternalConsistency) if a structural invariant fails (a non-decreasing,
/// a_n / n non-increasing, B_n^2 <= A_n^2 / 4).
LimitConstants limit_constants(const BsrdProcess& proc, std::size_t n);

double slln_partial_sum(const BsrdProcess& proc, std::size_t n);

/// Centering and scaling for S_n at a fixed n, computed once.
class LimitNormalizer {
 public:
  LimitNormalizer(const BsrdProcess& proc, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double a_n() const noexcept { return a_n_; }
  double B_n() const noexcept { return B_n_; }

  /// (s_n - E S_n) / (a_n B_n). Throws Error(DegenerateVariance) if B_n = 0.
  double clt(std::int64_t s_n) const;

  /// (s_n - E S_n) / (a_n B_n sqrt(log log B_n)). Throws Error(Domain) if B_n <= e.
  double lil(std::int64_t s_n) const;

 private:
  std::size_t n_;
  double mean_;
  double a_n_;
  double B_n_;
};

double clt_statistic(const BsrdProcess& proc, std::int64_t s_n, std::size_t n);
double lil_statistic(const BsrdProcess& proc, std::int64_t s_n, std::size_t n);

struct MartingaleTrace {
  std::vector<double> M;      // (S_i - E S_i) / a_i
  std::vector<double> D;      // D_1 = M_1, D_i = M_i - M_{i-1}
  std::vector<double> bound;  // 2 / a_i
};

/// Throws Error(InternalConsistency) if |D_i| > 2 / a_i anywhere.
MartingaleTrace martingale_trace(const BsrdProcess& proc, const PathSample& path);

/// Variant reusing precomputed constants and means (covering at least the path length).
MartingaleTrace martingale_trace(const LimitConstants& constants, const std::vector<double>& means,
                                 const PathSample& path);

enum class Cond1Class { Holds, Fails, Undetermined };

std::string_view cond1_name(Cond1Class c);

struct RegimeReport {
  LimitConstants constants;
  Cond1Class cond1 = Cond1Class::Undetermined;
  /// beta_k lambda_k == 1 for every k < n: a_n = n and B_n stays bounded.
  bool degenerate = false;
  bool clt_hypotheses_plausible = false;
  /// Analytic limit of A_n / B_n when beta lambda = 0 and alpha is constant.
  std::optional<double> limiting_ratio;
  std::vector<std::string> flags;
};

RegimeReport regime_report(const BsrdProcess& proc, std::size_t n);

}  // namespace bsrd
