#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "bsrd/kernels.hpp"
#include "bsrd/rng.hpp"

using namespace bsrd;
using namespace bsrd::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<std::size_t> lengths() {
  std::vector<std::size_t> v;
  for (std::size_t n = 0; n <= 40; ++n) v.push_back(n);
  for (std::size_t n : {63, 64, 65, 127, 1000, 4097}) v.push_back(n);
  return v;
}

}  // namespace

TEST_CASE("scalar table fill_uniform follows the counter stream") {
  const KernelTable& s = scalar_table();
  std::vector<double> out(17);
  s.fill_uniform(99, 5, out.data(), out.size());
  for (std::size_t k = 0; k < out.size(); ++k) CHECK(out[k] == stream_uniform(99, 5 + k));
}

TEST_CASE("scalar dp_step matches its definition") {
  const KernelTable& s = scalar_table();
  const std::vector<double> prev{0.2, 0.5, 0.3};
  const std::vector<double> p{0.1, 0.6, 0.9};
  std::vector<double> next(4);
  s.dp_step(prev.data(), p.data(), next.data(), 3);
  CHECK(next[0] == doctest::Approx(0.2 * 0.9));
  CHECK(next[1] == doctest::Approx(0.5 * 0.4 + 0.2 * 0.1));
  CHECK(next[2] == doctest::Approx(0.3 * 0.1 + 0.5 * 0.6));
  CHECK(next[3] == doctest::Approx(0.3 * 0.9));
}

TEST_CASE("scalar count_windows counts overlapping windows") {
  const KernelTable& s = scalar_table();
  const std::vector<std::uint8_t> bits{1, 0, 1, 0, 1, 0};
  const std::vector<std::uint8_t> pat{1, 0, 1};
  CHECK(s.count_windows(bits.data(), bits.size(), pat.data(), pat.size()) == 2);
  CHECK(s.count_windows(bits.data(), 2, pat.data(), pat.size()) == 0);
}

TEST_CASE("avx2 kernels are bitwise identical to scalar") {
  const KernelTable* v = avx2_table();
  if (v == nullptr) {
    MESSAGE("avx2 not available; equivalence test skipped");
    return;
  }
  const KernelTable& s = scalar_table();
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  for (const std::size_t n : lengths()) {
    CAPTURE(n);
    std::vector<double> prev(n), p(n);
    for (auto& x : prev) x = unif(gen);
    for (auto& x : p) x = unif(gen);

    std::vector<double> a(n + 1), b(n + 1);
    s.dp_step(prev.data(), p.data(), a.data(), n);
    v->dp_step(prev.data(), p.data(), b.data(), n);
    CHECK(same_bits(a, b));

    std::vector<double> ra(n), rb(n);
    s.linear_row(0.3, 0.0137, ra.data(), n);
    v->linear_row(0.3, 0.0137, rb.data(), n);
    CHECK(same_bits(ra, rb));

    const double sa = s.compensated_sum(prev.data(), n);
    const double sb = v->compensated_sum(prev.data(), n);
    CHECK(std::memcmp(&sa, &sb, sizeof sa) == 0);

    std::vector<double> ua(n), ub(n);
    s.fill_uniform(0xabcdefULL + n, 3 * n, ua.data(), n);
    v->fill_uniform(0xabcdefULL + n, 3 * n, ub.data(), n);
    CHECK(same_bits(ua, ub));

    std::vector<std::uint8_t> ta(n), tb(n);
    s.threshold_bits(ua.data(), p.data(), ta.data(), n);
    v->threshold_bits(ua.data(), p.data(), tb.data(), n);
    CHECK(ta == tb);

    for (const std::size_t m : {1, 2, 3, 5, 8, 16, 17, 21, 33}) {
      std::vector<std::uint8_t> pat(m);
      for (auto& x : pat) x = static_cast<std::uint8_t>(gen() & 1u);
      // Sparse patterns exercise the early exit.
      std::vector<std::uint8_t> bits(n);
      for (auto& x : bits) x = static_cast<std::uint8_t>((gen() % 4) == 0);
      CHECK(s.count_windows(bits.data(), n, pat.data(), m) ==
            v->count_windows(bits.data(), n, pat.data(), m));
      CHECK(s.count_windows(ta.data(), n, pat.data(), m) ==
            v->count_windows(ta.data(), n, pat.data(), m));
    }
  }
}

TEST_CASE("compensated sum keeps small terms") {
  const KernelTable& s = scalar_table();
  std::vector<double> x(1'000'001, 1e-16);
  x[0] = 1.0;
  CHECK(s.compensated_sum(x.data(), x.size()) == doctest::Approx(1.0 + 1e-10).epsilon(1e-15));
  std::vector<double> tenth(1'000'000, 0.1);
  CHECK(std::fabs(s.compensated_sum(tenth.data(), tenth.size()) - 1e5) < 1e-9);
}

TEST_CASE("isa selection") {
  CHECK(isa_available(Isa::Scalar));
  select_isa(Isa::Scalar);
  CHECK(active().isa == Isa::Scalar);
  if (isa_available(Isa::Avx2)) {
    select_isa(Isa::Avx2);
    CHECK(active().isa == Isa::Avx2);
  } else {
    CHECK_THROWS(select_isa(Isa::Avx2));
  }
  reset_isa();
}
