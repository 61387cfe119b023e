#include "bsrd/kernels.hpp"
#include "bsrd/rng.hpp"
#include "kernel_common.hpp"

namespace bsrd::kernels {
namespace {

void dp_step_scalar(const double* prev, const double* p, double* next, std::size_t len) {
  detail::dp_edges(prev, p, next, len);
  for (std::size_t s = 1; s < len; ++s) {
    next[s] = prev[s] * (1.0 - p[s]) + prev[s - 1] * p[s - 1];
  }
}

void linear_row_scalar(double intercept, double slope, double* out, std::size_t len) {
  for (std::size_t s = 0; s < len; ++s) {
    out[s] = intercept + slope * static_cast<double>(s);
  }
}

double compensated_sum_scalar(const double* values, std::size_t len) {
  const std::size_t body = len - len % 4;
  detail::KahanLane lanes[4];
  for (std::size_t k = 0; k < body; k += 4) {
    for (int j = 0; j < 4; ++j) lanes[j].add(values[k + j]);
  }
  const double sums[4] = {lanes[0].sum, lanes[1].sum, lanes[2].sum, lanes[3].sum};
  const double carries[4] = {lanes[0].carry, lanes[1].carry, lanes[2].carry, lanes[3].carry};
  return detail::merge_lanes(sums, carries, values + body, len - body);
}

std::uint64_t count_windows_scalar(const std::uint8_t* bits, std::size_t len,
                                   const std::uint8_t* pattern, std::size_t m) {
  if (m == 0 || m > len) return 0;
  std::uint64_t count = 0;
  for (std::size_t k = 0; k + m <= len; ++k) {
    std::size_t j = 0;
    while (j < m && bits[k + j] == pattern[j]) ++j;
    count += (j == m);
  }
  return count;
}

void threshold_bits_scalar(const double* uniforms, const double* probs, std::uint8_t* out,
                           std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) out[k] = uniforms[k] < probs[k] ? 1 : 0;
}

void fill_uniform_scalar(std::uint64_t key, std::uint64_t first, double* out, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) out[k] = stream_uniform(key, first + k);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      Isa::Scalar,          "scalar",
      dp_step_scalar,       linear_row_scalar,
      compensated_sum_scalar, count_windows_scalar,
      threshold_bits_scalar, fill_uniform_scalar,
  };
  return table;
}

}  // namespace bsrd::kernels
