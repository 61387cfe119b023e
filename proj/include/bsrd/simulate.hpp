#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bsrd/process.hpp"

namespace bsrd {

/// One trajectory. Index k holds trial k + 1: xs[k] = X_{k+1}, ys[k] = Y_{k+1},
/// partial_sums[k] = S_{k+1}.
struct PathSample {
  std::vector<std::uint8_t> xs;
  std::vector<std::uint8_t> ys;
  std::vector<std::int64_t> partial_sums;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return xs.size(); }
};

/// Draw order on the seed's stream: X_1, then (Y_i, X_{i+1}) for
/// i = 1..n-1, then Y_n. Uniform k of the stream drives draw k.
PathSample simulate_path(const BsrdProcess& proc, std::size_t n, std::uint64_t seed);

/// Same as simulate_path, reusing the buffers of `out`.
void simulate_path_into(const BsrdProcess& proc, std::size_t n, std::uint64_t seed,
                        PathSample& out, std::vector<double>& uniform_scratch);

/// W_i = 2 S_i - i.
std::vector<std::int64_t> walk_position(const PathSample& path);

/// n independent switch trials: bit k is Y_{k+1} ~ Bernoulli(lambdas[k]).
void simulate_switch_into(const std::vector<double>& lambdas, std::uint64_t seed,
                          std::vector<std::uint8_t>& bits, std::vector<double>& uniform_scratch);

std::vector<std::uint8_t> simulate_switch(const SwitchModel& sw, std::size_t n, std::uint64_t seed);

}  // namespace bsrd
