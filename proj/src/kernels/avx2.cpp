#include <immintrin.h>

#include "bsrd/kernels.hpp"
#include "bsrd/rng.hpp"
#include "kernel_common.hpp"

#define BSRD_AVX2 __attribute__((target("avx2")))

namespace bsrd::kernels {
namespace {

BSRD_AVX2 void dp_step_avx2(const double* prev, const double* p, double* next, std::size_t len) {
  detail::dp_edges(prev, p, next, len);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t s = 1;
  for (; s + 4 <= len; s += 4) {
    const __m256d stay = _mm256_mul_pd(_mm256_loadu_pd(prev + s),
                                       _mm256_sub_pd(one, _mm256_loadu_pd(p + s)));
    const __m256d move = _mm256_mul_pd(_mm256_loadu_pd(prev + s - 1), _mm256_loadu_pd(p + s - 1));
    _mm256_storeu_pd(next + s, _mm256_add_pd(stay, move));
  }
  for (; s < len; ++s) {
    next[s] = prev[s] * (1.0 - p[s]) + prev[s - 1] * p[s - 1];
  }
}

BSRD_AVX2 void linear_row_avx2(double intercept, double slope, double* out, std::size_t len) {
  const __m256d base = _mm256_set1_pd(intercept);
  const __m256d step = _mm256_set1_pd(slope);
  const __m256d four = _mm256_set1_pd(4.0);
  __m256d index = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  std::size_t s = 0;
  for (; s + 4 <= len; s += 4) {
    _mm256_storeu_pd(out + s, _mm256_add_pd(base, _mm256_mul_pd(step, index)));
    index = _mm256_add_pd(index, four);
  }
  for (; s < len; ++s) out[s] = intercept + slope * static_cast<double>(s);
}

BSRD_AVX2 double compensated_sum_avx2(const double* values, std::size_t len) {
  const std::size_t body = len - len % 4;
  __m256d sum = _mm256_setzero_pd();
  __m256d carry = _mm256_setzero_pd();
  for (std::size_t k = 0; k < body; k += 4) {
    const __m256d y = _mm256_sub_pd(_mm256_loadu_pd(values + k), carry);
    const __m256d t = _mm256_add_pd(sum, y);
    carry = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
    sum = t;
  }
  double sums[4];
  double carries[4];
  _mm256_storeu_pd(sums, sum);
  _mm256_storeu_pd(carries, carry);
  return detail::merge_lanes(sums, carries, values + body, len - body);
}

BSRD_AVX2 std::uint64_t count_windows_avx2(const std::uint8_t* bits, std::size_t len,
                                           const std::uint8_t* pattern, std::size_t m) {
  if (m == 0 || m > len) return 0;
  std::uint64_t count = 0;
  std::size_t k = 0;
  // 32 start positions per block; the block reads bits[k .. k + 31 + m - 1].
  for (; k + 31 + m <= len; k += 32) {
    __m256i match = _mm256_set1_epi8(static_cast<char>(0xff));
    for (std::size_t j = 0; j < m; ++j) {
      const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(bits + k + j));
      match = _mm256_and_si256(match, _mm256_cmpeq_epi8(v, _mm256_set1_epi8(static_cast<char>(pattern[j]))));
      if (_mm256_testz_si256(match, match)) break;
    }
    count += static_cast<std::uint64_t>(
        __builtin_popcount(static_cast<unsigned>(_mm256_movemask_epi8(match))));
  }
  for (; k + m <= len; ++k) {
    std::size_t j = 0;
    while (j < m && bits[k + j] == pattern[j]) ++j;
    count += (j == m);
  }
  return count;
}

BSRD_AVX2 void threshold_bits_avx2(const double* uniforms, const double* probs, std::uint8_t* out,
                                   std::size_t len) {
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    const __m256d lt =
        _mm256_cmp_pd(_mm256_loadu_pd(uniforms + k), _mm256_loadu_pd(probs + k), _CMP_LT_OQ);
    const int mask = _mm256_movemask_pd(lt);
    out[k] = static_cast<std::uint8_t>(mask & 1);
    out[k + 1] = static_cast<std::uint8_t>((mask >> 1) & 1);
    out[k + 2] = static_cast<std::uint8_t>((mask >> 2) & 1);
    out[k + 3] = static_cast<std::uint8_t>((mask >> 3) & 1);
  }
  for (; k < len; ++k) out[k] = uniforms[k] < probs[k] ? 1 : 0;
}

// Low 64 bits of a 64x64 product per lane; AVX2 only has 32x32->64.
BSRD_AVX2 inline __m256i mullo_u64(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(_mm256_srli_epi64(a, 32), b),
                                         _mm256_mul_epu32(a, _mm256_srli_epi64(b, 32)));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

BSRD_AVX2 void fill_uniform_avx2(std::uint64_t key, std::uint64_t first, double* out,
                                 std::size_t len) {
  const __m256i m1 = _mm256_set1_epi64x(static_cast<long long>(0xbf58476d1ce4e5b9ULL));
  const __m256i m2 = _mm256_set1_epi64x(static_cast<long long>(0x94d049bb133111ebULL));
  const __m256i exponent = _mm256_set1_epi64x(0x3ff0000000000000LL);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256i stride = _mm256_set1_epi64x(static_cast<long long>(4 * kGoldenGamma));
  __m256i x = _mm256_add_epi64(
      _mm256_set1_epi64x(static_cast<long long>(key + (first + 1) * kGoldenGamma)),
      _mm256_setr_epi64x(0, static_cast<long long>(kGoldenGamma),
                         static_cast<long long>(2 * kGoldenGamma),
                         static_cast<long long>(3 * kGoldenGamma)));
  std::size_t k = 0;
  for (; k + 4 <= len; k += 4) {
    __m256i z = x;
    z = mullo_u64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), m1);
    z = mullo_u64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), m2);
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
    const __m256i mantissa = _mm256_or_si256(_mm256_srli_epi64(z, 12), exponent);
    _mm256_storeu_pd(out + k, _mm256_sub_pd(_mm256_castsi256_pd(mantissa), one));
    x = _mm256_add_epi64(x, stride);
  }
  for (; k < len; ++k) out[k] = stream_uniform(key, first + k);
}

}  // namespace

namespace detail {

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{
      Isa::Avx2,           "avx2",
      dp_step_avx2,        linear_row_avx2,
      compensated_sum_avx2, count_windows_avx2,
      threshold_bits_avx2, fill_uniform_avx2,
  };
  return table;
}

}  // namespace detail
}  // namespace bsrd::kernels
