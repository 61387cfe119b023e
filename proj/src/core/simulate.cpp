#include "bsrd/simulate.hpp"

#include "bsrd/error.hpp"
#include "bsrd/format.hpp"
#include "bsrd/kernels.hpp"

namespace bsrd {

void simulate_path_into(const BsrdProcess& proc, std::size_t n, std::uint64_t seed,
                        PathSample& out, std::vector<double>& u) {
  if (n > proc.horizon()) {
    throw Error(ErrorKind::Domain,
                "path length " + shortest(n) + " exceeds horizon " + shortest(proc.horizon()));
  }
  out.seed = seed;
  out.xs.assign(n, 0);
  out.ys.assign(n, 0);
  out.partial_sums.assign(n, 0);
  if (n == 0) return;

  u.resize(2 * n);
  kernels::active().fill_uniform(seed, 0, u.data(), 2 * n);
  const auto& lambdas = proc.lambdas();
  const family::Linear* lin = proc.linear();

  std::int64_t s = u[0] < proc.initial_prob() ? 1 : 0;
  out.xs[0] = static_cast<std::uint8_t>(s);
  out.partial_sums[0] = s;
  for (std::size_t i = 1; i < n; ++i) {
    const int y = u[2 * i - 1] < lambdas[i - 1] ? 1 : 0;
    out.ys[i - 1] = static_cast<std::uint8_t>(y);
    double p;
    if (lin != nullptr) {
      p = lin->alpha.at(i, "alpha");
      if (y == 1) p += lin->beta.at(i, "beta") * static_cast<double>(s) / static_cast<double>(i);
    } else {
      p = dependence_prob(proc.dependence(), i, y == 1 ? static_cast<std::size_t>(s) : 0);
    }
    const std::int64_t x = u[2 * i] < p ? 1 : 0;
    s += x;
    out.xs[i] = static_cast<std::uint8_t>(x);
    out.partial_sums[i] = s;
  }
  out.ys[n - 1] = u[2 * n - 1] < lambdas[n - 1] ? 1 : 0;
}

PathSample simulate_path(const BsrdProcess& proc, std::size_t n, std::uint64_t seed) {
  PathSample path;
  std::vector<double> scratch;
  simulate_path_into(proc, n, seed, path, scratch);
  return path;
}

std::vector<std::int64_t> walk_position(const PathSample& path) {
  std::vector<std::int64_t> w(path.partial_sums.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = 2 * path.partial_sums[k] - static_cast<std::int64_t>(k + 1);
  }
  return w;
}

void simulate_switch_into(const std::vector<double>& lambdas, std::uint64_t seed,
                          std::vector<std::uint8_t>& bits, std::vector<double>& u) {
  const auto& k = kernels::active();
  const std::size_t n = lambdas.size();
  u.resize(n);
  bits.resize(n);
  k.fill_uniform(seed, 0, u.data(), n);
  k.threshold_bits(u.data(), lambdas.data(), bits.data(), n);
}

std::vector<std::uint8_t> simulate_switch(const SwitchModel& sw, std::size_t n, std::uint64_t seed) {
  validate_switch(sw, n);
  std::vector<std::uint8_t> bits;
  std::vector<double> scratch;
  simulate_switch_into(switch_probs(sw, n), seed, bits, scratch);
  return bits;
}

}  // namespace bsrd
