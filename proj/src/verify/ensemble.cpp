#include <string>

#include "bsrd/error.hpp"
#include "bsrd/format.hpp"
#include "bsrd/model_json.hpp"
#include "bsrd/parallel.hpp"
#include "bsrd/rng.hpp"
#include "bsrd/verify.hpp"

namespace bsrd {

Ensemble run_ensemble(const BsrdProcess& proc, std::size_t n, std::size_t replicates,
                      std::uint64_t seed, const EnsembleOptions& options) {
  if (replicates == 0) throw Error(ErrorKind::Domain, "ensemble needs R >= 1 replicates");
  if (n == 0) throw Error(ErrorKind::Domain, "ensemble needs path length n >= 1");
  if (n > proc.horizon()) {
    throw Error(ErrorKind::Domain,
                "path length " + shortest(n) + " exceeds horizon " + shortest(proc.horizon()));
  }

  Ensemble e;
  e.process = process_to_json(proc);
  e.n = n;
  e.replicates = replicates;
  e.seed = seed;
  e.terminal.assign(replicates, 0);
  if (options.retain_paths) e.paths.resize(replicates);

  const unsigned workers = resolve_workers(options.workers);
  std::vector<PathSample> path_scratch(workers);
  std::vector<std::vector<double>> uniform_scratch(workers);
  parallel_for(replicates, workers, [&](std::size_t r, unsigned w) {
    PathSample& path = options.retain_paths ? e.paths[r] : path_scratch[w];
    simulate_path_into(proc, n, derive_seed(seed, r), path, uniform_scratch[w]);
    e.terminal[r] = path.partial_sums.back();
  });

  // Index-ordered reduction keeps the summary independent of the schedule.
  e.empirical.assign(n + 1, 0.0);
  double sum = 0.0;
  for (const std::int64_t s : e.terminal) {
    sum += static_cast<double>(s);
    e.empirical[static_cast<std::size_t>(s)] += 1.0;
  }
  const double R = static_cast<double>(replicates);
  e.mean = sum / R;
  double ss = 0.0;
  for (const std::int64_t s : e.terminal) {
    const double d = static_cast<double>(s) - e.mean;
    ss += d * d;
  }
  e.variance = replicates > 1 ? ss / (R - 1.0) : 0.0;
  for (double& v : e.empirical) v /= R;
  return e;
}

}  // namespace bsrd
