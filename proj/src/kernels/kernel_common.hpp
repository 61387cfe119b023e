#pragma once

#include <cstddef>

namespace bsrd::kernels::detail {

struct KahanLane {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

/// Shared epilogue of compensated_sum: merges lane states and the
/// unvectorized tail in one fixed order so every variant agrees bitwise.
inline double merge_lanes(const double (&sums)[4], const double (&carries)[4],
                          const double* tail, std::size_t tail_len) noexcept {
  KahanLane total;
  for (int j = 0; j < 4; ++j) total.add(sums[j]);
  for (int j = 0; j < 4; ++j) total.add(-carries[j]);
  for (std::size_t k = 0; k < tail_len; ++k) total.add(tail[k]);
  return total.sum - total.carry;
}

inline void dp_edges(const double* prev, const double* p, double* next, std::size_t len) noexcept {
  if (len == 0) {
    next[0] = 0.0;
    return;
  }
  next[0] = prev[0] * (1.0 - p[0]);
  next[len] = prev[len - 1] * p[len - 1];
}

}  // namespace bsrd::kernels::detail
