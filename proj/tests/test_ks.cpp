#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bsrd/error.hpp"
#include "bsrd/ks.hpp"

using namespace bsrd;

namespace {

/// Inverse normal CDF by bisection on normal_cdf.
double quantile(double u) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Q(x) from the alternating series with many terms.
double ks_reference(double x) {
  double sum = 0.0;
  for (int j = 1; j <= 2000; ++j) sum += (j % 2 ? 2.0 : -2.0) * std::exp(-2.0 * j * j * x * x);
  return sum;
}

}  // namespace

TEST_CASE("normal cdf") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-14));
  CHECK(normal_cdf(-10.0) == doctest::Approx(7.61985302416047e-24).epsilon(1e-10));
}

TEST_CASE("kolmogorov survival function") {
  CHECK(kolmogorov_sf(0.0) == 1.0);
  CHECK(kolmogorov_sf(-1.0) == 1.0);
  CHECK(kolmogorov_sf(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-10));
  CHECK(kolmogorov_sf(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-10));
  CHECK(kolmogorov_sf(1.36) == doctest::Approx(0.0494).epsilon(2e-3));
  for (const double x : {0.3, 0.6, 0.9, 0.999, 1.0, 1.2, 2.0, 3.0}) {
    CHECK(kolmogorov_sf(x) == doctest::Approx(ks_reference(x)).epsilon(1e-9));
  }
  // Continuity across the switch between the two series forms.
  CHECK(kolmogorov_sf(1.0 - 1e-12) == doctest::Approx(kolmogorov_sf(1.0)).epsilon(1e-10));
  double prev = 1.0;
  for (double x = 0.05; x < 4.0; x += 0.01) {
    const double q = kolmogorov_sf(x);
    CHECK(q <= prev);
    CHECK(q >= 0.0);
    prev = q;
  }
}

TEST_CASE("ks statistic") {
  const std::size_t m = 1000;
  std::vector<double> exact(m);
  for (std::size_t i = 0; i < m; ++i) exact[i] = quantile((i + 0.5) / m);
  const KsResult r = ks_test(exact);
  CHECK(r.statistic == doctest::Approx(0.5 / m).epsilon(1e-6));
  CHECK(r.p_value == doctest::Approx(1.0));

  const std::vector<double> zeros(100, 0.0);
  const KsResult z = ks_test(zeros);
  CHECK(z.statistic == doctest::Approx(0.5));
  CHECK(z.p_value < 1e-15);

  // Shifted samples give a larger statistic and a smaller p-value.
  std::vector<double> shifted(exact);
  for (auto& x : shifted) x += 0.2;
  const KsResult s = ks_test(shifted);
  CHECK(s.statistic > r.statistic);
  CHECK(std::fabs(s.statistic - (normal_cdf(0.1) - normal_cdf(-0.1))) <= 1.0 / m);
  CHECK(s.p_value < 1e-4);

  // Order of the input is irrelevant.
  std::vector<double> reversed(shifted.rbegin(), shifted.rend());
  CHECK(ks_test(reversed).statistic == s.statistic);
}

TEST_CASE("ks needs 50 samples") {
  const std::vector<double> few(49, 0.1);
  try {
    (void)ks_test(few);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
  CHECK_NOTHROW(ks_test(std::vector<double>(50, 0.1)));
}
