#include "bsrd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsrd/config.hpp"
#include "bsrd/error.hpp"
#include "bsrd/exact.hpp"
#include "bsrd/format.hpp"
#include "bsrd/limits.hpp"
#include "bsrd/model_json.hpp"
#include "bsrd/patterns.hpp"
#include "bsrd/rng.hpp"
#include "bsrd/simulate.hpp"
#include "bsrd/verify.hpp"
#include "bsrd/waiting.hpp"

namespace bsrd {
namespace {

using nlohmann::json;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  std::optional<std::size_t> replicates;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool with_config) {
  if (with_config) sub->add_option("--config", c.config, "run configuration (JSON)");
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--n", c.n, "sequence length");
  sub->add_option("--replicates", c.replicates, "number of replicates");
  sub->add_option("--out", c.out, "output directory (default: standard output)");
}

/// Routes outputs to files under a directory, or to `out` when there is none.
/// A manifest is written next to the files.
class Sink {
 public:
  Sink(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {}

  void emit(const std::string& file, const std::string& content) {
    if (dir_.empty()) {
      out_ << content;
      return;
    }
    std::filesystem::create_directories(dir_);
    const std::filesystem::path path = std::filesystem::path(dir_) / file;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Config, "out: cannot write " + path.string());
    f << content;
    files_.push_back(file);
  }

  void manifest(const std::string& command, std::uint64_t seed, const json& config, json arguments) {
    if (dir_.empty()) return;
    json m{{"tool", "bsrd"},
           {"version", BSRD_VERSION},
           {"command", command},
           {"seed", seed},
           {"config", config},
           {"arguments", std::move(arguments)},
           {"outputs", files_}};
    const std::string text = m.dump(2) + "\n";
    std::ofstream f(std::filesystem::path(dir_) / "manifest.json", std::ios::binary);
    if (!f) throw Error(ErrorKind::Config, "out: cannot write manifest.json");
    f << text;
  }

 private:
  std::string dir_;
  std::ostream& out_;
  std::vector<std::string> files_;
};

std::string join_row(std::initializer_list<std::string> cells) {
  std::string row;
  bool first = true;
  for (const std::string& c : cells) {
    if (!first) row += ',';
    row += c;
    first = false;
  }
  row += '\n';
  return row;
}

RunConfig require_config(const Common& c) {
  if (c.config.empty()) throw Error(ErrorKind::Config, "--config: required for this subcommand");
  return load_config(c.config);
}

std::string out_dir(const Common& c, const RunConfig* cfg) {
  if (!c.out.empty()) return c.out;
  return cfg != nullptr ? cfg->output_dir : std::string();
}

json common_args(const Common& c) {
  json a = json::object();
  if (!c.config.empty()) a["config"] = c.config;
  if (c.seed) a["seed"] = *c.seed;
  if (c.n) a["n"] = *c.n;
  if (c.replicates) a["replicates"] = *c.replicates;
  return a;
}

// ---------------------------------------------------------------------------

int run_simulate(const Common& c, std::ostream& out) {
  const RunConfig cfg = require_config(c);
  const std::size_t n = c.n.value_or(cfg.n);
  const std::uint64_t seed = c.seed.value_or(cfg.seed);
  const std::size_t R = c.replicates.value_or(cfg.replicates);
  if (R == 0) throw Error(ErrorKind::Config, "--replicates: must be >= 1");
  const BsrdProcess proc(cfg.model, cfg.switch_model, n);

  std::string csv = R == 1 ? "i,x,y,s\n" : "replicate,i,x,y,s\n";
  PathSample path;
  std::vector<double> scratch;
  for (std::size_t r = 0; r < R; ++r) {
    simulate_path_into(proc, n, derive_seed(seed, r), path, scratch);
    for (std::size_t k = 0; k < n; ++k) {
      if (R > 1) csv += shortest(r) + ",";
      csv += join_row({shortest(k + 1), shortest(static_cast<int>(path.xs[k])),
                       shortest(static_cast<int>(path.ys[k])), shortest(path.partial_sums[k])});
    }
  }
  Sink sink(out_dir(c, &cfg), out);
  sink.emit("paths.csv", csv);
  sink.manifest("simulate", seed, config_to_json(cfg), common_args(c));
  return kExitOk;
}

int run_dist(const Common& c, std::ostream& out) {
  const RunConfig cfg = require_config(c);
  const std::size_t n = c.n.value_or(cfg.n);
  const BsrdProcess proc(cfg.model, cfg.switch_model, n);
  const SnDistribution d = exact_sn_distribution(proc, n);
  std::string csv = "s,prob\n";
  for (std::size_t s = 0; s <= n; ++s) csv += join_row({shortest(s), shortest(d.probs[s])});
  Sink sink(out_dir(c, &cfg), out);
  sink.emit("dist.csv", csv);
  sink.manifest("dist", c.seed.value_or(cfg.seed), config_to_json(cfg), common_args(c));
  return kExitOk;
}

int run_limits(const Common& c, std::ostream& out) {
  const RunConfig cfg = require_config(c);
  const std::size_t n = c.n.value_or(cfg.n);
  const BsrdProcess proc(cfg.model, cfg.switch_model, n);
  const LimitConstants lc = limit_constants(proc, n);
  std::string csv = "n,a,A,B,slln_partial,ratio\n";
  for (std::size_t k = 0; k < lc.size(); ++k) {
    csv += join_row({shortest(k + 1), shortest(lc.a[k]), shortest(lc.A[k]), shortest(lc.B[k]),
                     shortest(lc.slln_partial[k]), shortest(lc.ratio[k])});
  }
  Sink sink(out_dir(c, &cfg), out);
  sink.emit("limits.csv", csv);
  sink.manifest("limits", c.seed.value_or(cfg.seed), config_to_json(cfg), common_args(c));
  return kExitOk;
}

json length_counts(const std::vector<LengthCount>& v) {
  json a = json::array();
  for (const LengthCount& lc : v) a.push_back(json{{"l", lc.l}, {"count", lc.count}});
  return a;
}

int run_patterns(const Common& c, const std::string& bits_text, std::size_t max_l, std::ostream& out) {
  std::optional<RunConfig> cfg;
  if (!c.config.empty()) cfg = load_config(c.config);
  if (bits_text.empty() && !cfg) {
    throw Error(ErrorKind::Config, "patterns: give --bits STRING or --config with a switch spec");
  }

  json report = json::object();
  Bits bits;
  std::uint64_t seed = 0;
  if (!bits_text.empty()) {
    bits = parse_bits(bits_text);
    report["source"] = "bits";
  } else {
    const std::size_t n = c.n.value_or(cfg->n);
    seed = c.seed.value_or(cfg->seed);
    bits = simulate_switch(cfg->switch_model, n, derive_seed(seed, 0));
    report["source"] = "simulated";
    report["seed"] = seed;
  }
  const std::size_t n = bits.size();
  if (n == 0) throw Error(ErrorKind::Domain, "patterns: empty bit string");
  std::string text(n, '0');
  for (std::size_t k = 0; k < n; ++k) text[k] = bits[k] ? '1' : '0';
  report["bits"] = text;
  report["n"] = n;

  const PatternCounts pc = pattern_counts(bits, max_l);
  json lapses = json::array();
  for (const Lapse& l : pc.intervals) lapses.push_back(json{{"start", l.start}, {"length", l.length}});
  report["counts"] = json{{"M", length_counts(pc.lapses)},
                          {"A", length_counts(pc.alternations)},
                          {"T_2", pc.tails ? json(*pc.tails) : json(nullptr)},
                          {"Z", length_counts(pc.z)}};
  report["lapses"] = lapses;

  if (cfg) {
    const SwitchModel& sw = cfg->switch_model;
    report["switch"] = switch_to_json(sw);
    json m = json::array(), a = json::array(), z = json::array();
    for (const LengthCount& lc : pc.lapses) {
      m.push_back(json{{"l", lc.l}, {"expected", expected_lapse_count(sw, n, lc.l)}});
    }
    for (const LengthCount& lc : pc.alternations) {
      a.push_back(json{{"l", lc.l}, {"expected", expected_alternation_count(sw, n, lc.l)}});
    }
    for (const LengthCount& lc : pc.z) {
      z.push_back(json{{"l", lc.l}, {"expected", expected_z(sw, lc.l, n).partial}});
    }
    report["expectations"] = json{{"M", m},
                                  {"A", a},
                                  {"T_2", pc.tails ? json(expected_tail_count(sw, n)) : json(nullptr)},
                                  {"Z", z}};
  }

  Sink sink(out_dir(c, cfg ? &*cfg : nullptr), out);
  sink.emit("patterns.json", report.dump(2) + "\n");
  json args = common_args(c);
  if (!bits_text.empty()) args["bits"] = bits_text;
  args["max_l"] = max_l;
  sink.manifest("patterns", seed, cfg ? config_to_json(*cfg) : json(nullptr), std::move(args));
  return kExitOk;
}

struct WaitingArgs {
  bool fq = false;
  bool sq = false;
  std::optional<std::size_t> r;
  std::optional<std::size_t> s;
  std::optional<double> lambda;
  std::optional<std::size_t> horizon;
  std::optional<double> pgf_t;
};

int run_waiting(const Common& c, const WaitingArgs& w, std::ostream& out) {
  if (w.fq == w.sq) throw Error(ErrorKind::Config, "waiting: choose exactly one of --fq and --sq");
  if (!w.lambda) throw Error(ErrorKind::Config, "--lambda: required");
  WaitingTimeDist d;
  json summary = json::object();
  if (w.fq) {
    if (!w.r) throw Error(ErrorKind::Config, "-r: required with --fq");
    if (w.pgf_t) throw Error(ErrorKind::Config, "--pgf-t: only available with --sq");
    d = fq_waiting_dist(*w.r, *w.lambda);
    if (w.horizon) {
      d.pmf.resize(*w.horizon + 1);
      for (std::size_t k = 0; k <= *w.horizon; ++k) d.pmf[k] = fq_waiting_pmf(*w.r, *w.lambda, k);
    }
    summary["kind"] = "fq";
  } else {
    if (!w.s) throw Error(ErrorKind::Config, "-s: required with --sq");
    d = sq_waiting_pmf(*w.s, *w.lambda, w.horizon.value_or(200));
    summary["kind"] = "sq";
    if (w.pgf_t) summary["pgf"] = json{{"t", *w.pgf_t}, {"value", sq_pgf_eval(*w.s, *w.lambda, *w.pgf_t)}};
  }
  summary["quota"] = d.quota;
  summary["lambda"] = d.lambda;
  summary["status"] = waiting_status_name(d.status);
  summary["mean_finite"] = std::isfinite(d.mean);
  summary["mean"] = d.mean;
  summary["mean_with_tail"] = d.mean_with_tail();
  summary["horizon"] = d.horizon();
  summary["pmf"] = d.pmf;

  std::string csv = "k,prob\n";
  for (std::size_t k = 0; k < d.pmf.size(); ++k) csv += join_row({shortest(k), shortest(d.pmf[k])});

  Sink sink(c.out, out);
  sink.emit("waiting.json", summary.dump(2) + "\n");
  if (!c.out.empty()) sink.emit("pmf.csv", csv);
  json args = json::object();
  args["quota_kind"] = w.fq ? "fq" : "sq";
  args["quota"] = d.quota;
  args["lambda"] = *w.lambda;
  if (w.horizon) args["horizon"] = *w.horizon;
  if (w.pgf_t) args["pgf_t"] = *w.pgf_t;
  sink.manifest("waiting", 0, nullptr, std::move(args));
  return kExitOk;
}

int run_verify(const Common& c, const std::string& suite, unsigned workers, std::ostream& out) {
  SuiteOptions opt;
  opt.suite = suite;
  opt.seed = c.seed.value_or(42);
  opt.workers = workers;
  const SuiteResult result = run_verification_suite(opt);
  Sink sink(c.out, out);
  sink.emit("reports.json", result.to_json().dump(2) + "\n");
  if (!c.out.empty()) sink.emit("summary.csv", result.summary_csv());
  sink.manifest("verify", opt.seed, nullptr, json{{"suite", suite}, {"seed", opt.seed}});
  return result.pass() ? kExitOk : kExitSuiteFailed;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bernoulli sequences with random dependence: exact laws, simulation, verification",
               "bsrd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", BSRD_VERSION);

  Common sim, dist, lim, pat, wait, ver;
  CLI::App* s_sim = app.add_subcommand("simulate", "simulate paths to CSV (i,x,y,s)");
  add_common(s_sim, sim, true);
  CLI::App* s_dist = app.add_subcommand("dist", "exact law of S_n to CSV (s,prob)");
  add_common(s_dist, dist, true);
  CLI::App* s_lim = app.add_subcommand("limits", "normalizing sequences to CSV");
  add_common(s_lim, lim, true);

  CLI::App* s_pat = app.add_subcommand("patterns", "pattern counts and expectations (JSON)");
  add_common(s_pat, pat, true);
  std::string bits_text;
  std::size_t max_l = 5;
  s_pat->add_option("--bits", bits_text, "switch string of 0/1 characters");
  s_pat->add_option("--max-l", max_l, "largest pattern size")->check(CLI::PositiveNumber);

  CLI::App* s_wait = app.add_subcommand("waiting", "FQ/SQ waiting-time laws (JSON, pmf CSV)");
  add_common(s_wait, wait, false);
  WaitingArgs w;
  s_wait->add_flag("--fq", w.fq, "frequency quota: r-th zero");
  s_wait->add_flag("--sq", w.sq, "succession quota: first run of s zeros");
  s_wait->add_option("-r", w.r, "frequency quota");
  s_wait->add_option("-s", w.s, "succession quota");
  s_wait->add_option("--lambda", w.lambda, "switch probability");
  s_wait->add_option("--horizon", w.horizon, "pmf table length");
  s_wait->add_option("--pgf-t", w.pgf_t, "evaluate the SQ pgf at t");

  CLI::App* s_ver = app.add_subcommand("verify", "run the verification suite (JSON reports)");
  add_common(s_ver, ver, false);
  std::string suite = "acceptance";
  unsigned workers = 0;
  s_ver->add_option("--suite", suite, "acceptance or quick");
  s_ver->add_option("--workers", workers, "worker threads (0: all cores); does not affect output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (s_sim->parsed()) return run_simulate(sim, out);
    if (s_dist->parsed()) return run_dist(dist, out);
    if (s_lim->parsed()) return run_limits(lim, out);
    if (s_pat->parsed()) return run_patterns(pat, bits_text, max_l, out);
    if (s_wait->parsed()) return run_waiting(wait, w, out);
    if (s_ver->parsed()) return run_verify(ver, suite, workers, out);
  } catch (const Error& e) {
    err << "error [" << error_kind_name(e.kind()) << "]: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace bsrd
