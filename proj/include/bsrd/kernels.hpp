#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and, where
// the target supports it, a SIMD variant that performs the identical IEEE
// operations in the identical order, so results are bitwise equal. The
// active table is chosen once at runtime from CPU features and can be
// overridden with BSRD_ISA=scalar or select_isa().

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace bsrd::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  std::string_view name;

  /// next[s] = prev[s](1 - p[s]) + prev[s-1] p[s-1] for s = 0..len, with
  /// prev[-1] = p[-1] = 0 and prev[len] = 0. `next` holds len + 1 entries.
  void (*dp_step)(const double* prev, const double* p, double* next, std::size_t len);

  /// out[s] = intercept + slope * s for s < len.
  void (*linear_row)(double intercept, double slope, double* out, std::size_t len);

  /// Kahan summation over four interleaved lanes, lanes merged in a fixed order.
  double (*compensated_sum)(const double* values, std::size_t len);

  /// Number of start positions k in [0, len - m] with bits[k + j] == pattern[j]
  /// for all j < m. Bytes are expected to be 0 or 1.
  std::uint64_t (*count_windows)(const std::uint8_t* bits, std::size_t len,
                                 const std::uint8_t* pattern, std::size_t m);

  /// out[k] = uniforms[k] < probs[k].
  void (*threshold_bits)(const double* uniforms, const double* probs, std::uint8_t* out,
                         std::size_t len);

  /// out[k] = stream_uniform(key, first + k).
  void (*fill_uniform)(std::uint64_t key, std::uint64_t first, double* out, std::size_t len);
};

const KernelTable& scalar_table();

/// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_table();

bool isa_available(Isa isa);

const KernelTable& active();

/// Forces a variant; throws Error(Domain) if it is unavailable.
void select_isa(Isa isa);

/// Re-runs automatic selection (CPU features + BSRD_ISA).
void reset_isa();

}  // namespace bsrd::kernels
