// tow: command-line front end for the tug-of-war bandit experiments.
//
// Subcommands:
//   run-bp             two-machine single-player run with regret curves
//   run-cbp            multi-player competitive run (records + summary)
//   run-epd            competitive run on the extended prisoner's dilemma
//   sweep              fluctuation-kind x amplitude grid
//   verify-tables      payoff-table and EPD-table integrity checks
//   verify-invariants  conservation and identity property suites
//
// Exit codes: 0 success, 1 unexpected error, 2 bad usage or argument values,
// 3 data-integrity failure, 4 I/O failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tow/baselines.hpp"
#include "tow/environment.hpp"
#include "tow/errors.hpp"
#include "tow/fluctuations.hpp"
#include "tow/harness.hpp"
#include "tow/metrics.hpp"
#include "tow/tow_core.hpp"
#include "tow/verify.hpp"

namespace {

using namespace tow;

// Raw flag values plus the option handles needed to tell "explicitly set"
// apart from "left at default" (precedence: flags > config file > defaults).
struct CommonFlags {
  std::string config;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t plays = 1000;
  std::vector<double> machines = {0.03, 0.05, 0.1, 0.2, 0.9};
  std::size_t players = 3;
  std::string fluct = "random";
  double amplitude = 2.0;
  int depth = 10;
  std::string omega = "0.08";
  std::string policy = "split-prob";
  std::size_t workers = 1;
  std::string out = ".";

  CLI::Option* o_config = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_samples = nullptr;
  CLI::Option* o_plays = nullptr;
  CLI::Option* o_machines = nullptr;
  CLI::Option* o_players = nullptr;
  CLI::Option* o_fluct = nullptr;
  CLI::Option* o_amplitude = nullptr;
  CLI::Option* o_depth = nullptr;
  CLI::Option* o_omega = nullptr;
  CLI::Option* o_policy = nullptr;
  CLI::Option* o_workers = nullptr;
  CLI::Option* o_out = nullptr;
};

enum class FlagSet { Bandit, Competitive, Epd, Sweep };

// Registers the shared flag vocabulary on a subcommand. `f` must outlive the
// parse; the defaults shown in --help are whatever `f` holds at call time.
void add_common_flags(CLI::App* cmd, CommonFlags& f, FlagSet set) {
  f.o_config =
      cmd->add_option("--config", f.config,
                      "config file ([environment]/[dynamics]/[fluctuation]/"
                      "[output] sections, key = value lines)");
  f.o_seed = cmd->add_option("--seed", f.seed, "master seed")
                 ->capture_default_str();
  f.o_samples = cmd->add_option("--samples", f.samples, "Monte Carlo samples")
                    ->capture_default_str();
  f.o_plays = cmd->add_option("--plays", f.plays, "plays per sample")
                  ->capture_default_str();
  if (set != FlagSet::Epd) {
    f.o_machines =
        cmd->add_option("--machines", f.machines,
                        "machine reward probabilities (comma-separated)")
            ->delimiter(',')
            ->capture_default_str();
  }
  if (set == FlagSet::Competitive || set == FlagSet::Sweep) {
    f.o_players = cmd->add_option("--players", f.players, "number of players")
                      ->capture_default_str();
    f.o_policy =
        cmd->add_option("--policy", f.policy,
                        "collision handling: each contender draws at P/c "
                        "(split-prob) or shares one draw (split-value)")
            ->check(CLI::IsMember({"split-prob", "split-value"}))
            ->capture_default_str();
  }
  if (set == FlagSet::Competitive || set == FlagSet::Epd) {
    f.o_fluct = cmd->add_option("--fluct", f.fluct, "fluctuation kind")
                    ->check(CLI::IsMember(
                        {"none", "fixed", "random", "m-random", "external"}))
                    ->capture_default_str();
  }
  if (set != FlagSet::Sweep) {
    f.o_amplitude =
        cmd->add_option("--amplitude", f.amplitude,
                        set == FlagSet::Bandit
                            ? "half-width of the uniform fluctuation added to "
                              "the displacement"
                            : "fluctuation amplitude A")
            ->capture_default_str();
  }
  if (set != FlagSet::Bandit) {
    f.o_depth = cmd->add_option("--depth", f.depth,
                                "averaging depth D of the random kinds")
                    ->capture_default_str();
  }
  f.o_omega =
      cmd->add_option("--omega", f.omega,
                      "weighting parameter: a value, or 'auto' to estimate it "
                      "from each player's own reward history");
  if (set == FlagSet::Bandit) {
    f.o_omega->default_str("near-optimal value for the machine pair");
  } else {
    f.o_omega->capture_default_str();
  }
  if (set != FlagSet::Bandit) {
    f.o_workers =
        cmd->add_option("--workers", f.workers,
                        "worker threads (outputs independent of the count)")
            ->capture_default_str();
  }
  f.o_out = cmd->add_option("--out", f.out, "output directory")
                ->capture_default_str();
}

bool flag_given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

void apply_omega_token(ExperimentConfig& cfg, const std::string& token) {
  if (token == "auto") {
    cfg.omega_mode = OmegaMode::Adaptive;
    return;
  }
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &pos);
  } catch (const std::logic_error&) {
    pos = std::string::npos;
  }
  if (pos != token.size())
    throw std::invalid_argument("--omega expects 'auto' or a number, got '" +
                                token + "'");
  if (value < 0.0) throw std::invalid_argument("--omega must be >= 0");
  cfg.omega_mode = OmegaMode::Fixed;
  cfg.omega = value;
}

// flags > config file > the defaults the caller baked into `cfg`.
ExperimentConfig resolve_config(const CommonFlags& f, ExperimentConfig cfg) {
  if (flag_given(f.o_config)) cfg = load_config_file(f.config, cfg);
  if (flag_given(f.o_seed)) cfg.seed = f.seed;
  if (flag_given(f.o_samples)) cfg.samples = f.samples;
  if (flag_given(f.o_plays)) cfg.plays = f.plays;
  if (flag_given(f.o_machines)) cfg.probs = f.machines;
  if (flag_given(f.o_players)) cfg.players = f.players;
  if (flag_given(f.o_fluct)) cfg.fluct.kind = parse_fluctuation_kind(f.fluct);
  if (flag_given(f.o_amplitude)) cfg.fluct.amplitude = f.amplitude;
  if (flag_given(f.o_depth)) cfg.fluct.depth = f.depth;
  if (flag_given(f.o_omega)) apply_omega_token(cfg, f.omega);
  if (flag_given(f.o_policy))
    cfg.policy = f.policy == "split-prob" ? CollisionPolicy::SplitProbability
                                          : CollisionPolicy::SplitValue;
  if (flag_given(f.o_workers)) cfg.workers = f.workers;
  if (flag_given(f.o_out)) cfg.out_dir = f.out;
  return cfg;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void print_summary(const ExperimentConfig& cfg, const Summary& s) {
  char omega[32];
  if (cfg.omega_mode == OmegaMode::Adaptive)
    std::snprintf(omega, sizeof omega, "auto");
  else
    std::snprintf(omega, sizeof omega, "%g", cfg.omega);
  std::printf(
      "fluct=%s A=%g D=%d omega=%s | samples=%zu plays=%zu\n"
      "mean_total=%.2f mean_fairness=%.2f player_bias=%.2f "
      "SM=%.3f NE=%.3f other=%.3f mean_max_fluct=%.3f\n",
      fluctuation_kind_token(cfg.fluct.kind).c_str(), cfg.fluct.amplitude,
      cfg.fluct.depth, omega, s.samples, s.plays, s.mean_total, s.mean_fairness,
      s.player_bias, s.sm_freq, s.ne_freq, s.other_freq, s.mean_max_fluct);
}

void print_cluster_report(const ExperimentConfig& cfg,
                          const ExperimentResult& res) {
  const MachineSet machines(cfg.probs);
  const std::vector<long long> counts =
      cluster_report(res.records, machines, cfg.players, cfg.plays);

  // Reproduce the centroid enumeration: lexicographic assignments of the
  // top machines to players, then the all-on-best point.
  std::vector<std::size_t> perm = top_machines(machines, cfg.players);
  std::sort(perm.begin(), perm.end());
  std::printf("score clusters (nearest centroid, machines shown 1-based):\n");
  std::size_t c = 0;
  do {
    std::printf("  players on (");
    for (std::size_t i = 0; i < perm.size(); ++i)
      std::printf("%s%zu", i ? "," : "", perm[i] + 1);
    std::printf("): %lld\n", counts[c++]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::printf("  all on the best machine: %lld\n", counts[c]);
}

int cmd_run_cbp(const CommonFlags& flags) {
  const ExperimentConfig cfg = resolve_config(flags, ExperimentConfig{});
  const ExperimentResult res = run_experiment(cfg);
  const std::string records = out_path(cfg, "records.csv");
  const std::string summary = out_path(cfg, "summary.csv");
  write_records_csv(records, cfg, res.records, res.outcomes);
  write_summary_csv(summary, cfg,
                    {SweepRow{cfg.fluct.kind, cfg.fluct.amplitude, res.summary}});
  print_summary(cfg, res.summary);
  if (cfg.env_kind == EnvKind::Bernoulli) print_cluster_report(cfg, res);
  std::printf("wrote %s and %s\n", records.c_str(), summary.c_str());
  return 0;
}

int cmd_run_epd(const CommonFlags& flags, const std::string& table,
                bool table_given) {
  ExperimentConfig defaults;
  defaults.env_kind = EnvKind::Epd;
  // No known probability ladder to derive the weight from up front: estimate
  // it per player from experience unless the user pins a value.
  defaults.omega_mode = OmegaMode::Adaptive;
  ExperimentConfig cfg = resolve_config(flags, defaults);
  if (table_given) cfg.epd_table_path = table == "builtin" ? "" : table;
  const ExperimentResult res = run_experiment(cfg);
  const std::string records = out_path(cfg, "records.csv");
  const std::string summary = out_path(cfg, "summary.csv");
  write_records_csv(records, cfg, res.records, res.outcomes);
  write_summary_csv(summary, cfg,
                    {SweepRow{cfg.fluct.kind, cfg.fluct.amplitude, res.summary}});
  print_summary(cfg, res.summary);
  std::printf("wrote %s and %s\n", records.c_str(), summary.c_str());
  return 0;
}

int cmd_run_bp(const CommonFlags& flags, double pa, double pb, bool pa_given,
               bool pb_given, const std::vector<std::string>& baselines) {
  ExperimentConfig defaults;
  defaults.probs = {0.9, 0.2};
  defaults.players = 1;
  defaults.plays = 10000;
  defaults.fluct = FluctuationSpec(FluctuationKind::None, 1.0);
  defaults.omega = -1.0;  // sentinel: derive the near-optimal value below
  ExperimentConfig cfg = resolve_config(flags, defaults);
  if (cfg.env_kind == EnvKind::Bernoulli) {
    if (cfg.probs.size() != 2)
      throw std::invalid_argument("run-bp needs exactly two machines");
    if (pa_given) cfg.probs[0] = pa;
    if (pb_given) cfg.probs[1] = pb;
  }
  for (const std::string& token : baselines)
    cfg.bp_baselines.push_back(parse_baseline_kind(token));
  if (cfg.omega_mode == OmegaMode::Fixed && cfg.omega < 0.0) {
    cfg.omega = cfg.env_kind == EnvKind::Bernoulli
                    ? omega0(gamma_prime(cfg.probs, 1))
                    : 0.0;  // general runs never read the weight
  }

  const BpResult res = run_bp(cfg);
  const std::string regret = out_path(cfg, "regret.csv");
  write_regret_csv(regret, cfg, res);
  for (const BpArm& arm : res.arms)
    std::printf("%-8s final_regret=%.3f accuracy=%.3f mean_score=%.2f\n",
                arm.name.c_str(), arm.mean_regret.back(), arm.accuracy,
                arm.mean_score);
  std::printf("wrote %s\n", regret.c_str());
  return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::vector<std::string>& kinds,
              const std::vector<double>& amplitudes) {
  SweepSpec spec;
  spec.base = resolve_config(flags, ExperimentConfig{});
  for (const std::string& token : kinds)
    spec.kinds.push_back(parse_fluctuation_kind(token));
  spec.amplitudes = amplitudes;

  const std::vector<SweepRow> rows = run_sweep(spec);
  const std::string path = out_path(spec.base, "sweep.csv");
  write_summary_csv(path, spec.base, rows);
  std::printf("%-9s %8s %12s %14s %8s %8s %8s\n", "kind", "A", "mean_total",
              "mean_fairness", "sm_freq", "ne_freq", "max_fl");
  for (const SweepRow& row : rows)
    std::printf("%-9s %8g %12.2f %14.2f %8.3f %8.3f %8.2f\n",
                fluctuation_kind_token(row.kind).c_str(), row.amplitude,
                row.summary.mean_total, row.summary.mean_fairness,
                row.summary.sm_freq, row.summary.ne_freq,
                row.summary.mean_max_fluct);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

void print_check(const CheckResult& c) {
  std::printf("  [%s] %s: worst deviation %.3g%s%s\n", c.pass ? "ok" : "FAIL",
              c.name.c_str(), c.worst, c.detail.empty() ? "" : ", ",
              c.detail.c_str());
}

int cmd_verify_tables(const std::string& table, bool table_given) {
  int failures = 0;
  std::printf("three-player payoff tables:\n");
  for (const CheckResult& c : verify_payoff_tables()) {
    print_check(c);
    failures += c.pass ? 0 : 1;
  }

  std::optional<EpdTable> external;
  if (table_given) external = load_epd_table(table);
  const EpdTable& epd = table_given ? *external : builtin_epd_table();
  std::printf("extended prisoner's dilemma table (%s):\n",
              table_given ? table.c_str() : "builtin");
  const EpdVerifyReport rep = verify_epd(epd);
  std::printf("  [%s] 125 rows, admissible degrees and levels\n",
              rep.table_valid ? "ok" : "FAIL");
  std::printf("  [%s] anchor payoff levels (no charges 0.55, one-each 0.60, "
              "segregated 0.70, mutual defection 0.50)\n",
              rep.anchors_ok ? "ok" : "FAIL");
  if (rep.oracle_mismatches.empty()) {
    std::printf("  [ok] choice semantics reproduce all 125 degree rows\n");
  } else {
    for (const std::string& line : rep.oracle_mismatches)
      std::printf("  [FAIL] degree mismatch %s\n", line.c_str());
  }
  for (const std::string& line : rep.prose_conflicts)
    std::printf("  [note] documented discrepancy %s\n", line.c_str());
  failures += (rep.table_valid ? 0 : 1) + (rep.anchors_ok ? 0 : 1) +
              static_cast<int>(rep.oracle_mismatches.size());

  if (table_given) {
    long long diffs = 0;
    const EpdTable& builtin = builtin_epd_table();
    for (std::size_t i = 0; i < builtin.rows().size(); ++i) {
      const EpdRow& a = builtin.rows()[i];
      const EpdRow& b = epd.row(a.pattern);
      if (a.degrees != b.degrees || a.probs != b.probs) ++diffs;
    }
    std::printf("  [note] rows differing from the builtin table: %lld\n", diffs);
  }

  if (failures > 0) {
    std::printf("%d table integrity failure(s)\n", failures);
    return 3;
  }
  std::printf("all table checks passed\n");
  return 0;
}

int cmd_verify_invariants(std::uint64_t seed) {
  int failures = 0;
  std::printf("fluctuation conservation (10000 matrices per kind, tol 1e-12):\n");
  for (const CheckResult& c : verify_fluctuation_conservation(10000, 1e-12, seed)) {
    print_check(c);
    failures += c.pass ? 0 : 1;
  }
  std::printf("coupled-run conservation (100000 steps total, tol 1e-9):\n");
  for (const CheckResult& c : verify_bombe_conservation(100000, 1e-9, seed)) {
    print_check(c);
    failures += c.pass ? 0 : 1;
  }
  std::printf("estimate identities (1000 tuples, relative tol 1e-12):\n");
  const CheckResult c = verify_tow_principle(1000, 1e-12, seed);
  print_check(c);
  failures += c.pass ? 0 : 1;

  if (failures > 0) {
    std::printf("%d invariant failure(s)\n", failures);
    return 3;
  }
  std::printf("all invariants hold\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tow: tug-of-war bandit experiments — single-player regret curves, "
      "multi-player competitive runs, fluctuation sweeps, and table/invariant "
      "verification"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 unexpected error, 2 bad usage, 3 data "
      "integrity, 4 I/O.");

  // run-bp
  CLI::App* bp = app.add_subcommand(
      "run-bp", "two-machine single-player run; writes regret.csv");
  CommonFlags bp_flags;
  bp_flags.samples = 1000;
  bp_flags.plays = 10000;
  bp_flags.machines = {0.9, 0.2};
  bp_flags.amplitude = 1.0;
  add_common_flags(bp, bp_flags, FlagSet::Bandit);
  double pa = 0.9, pb = 0.2;
  CLI::Option* o_pa = bp->add_option("--pa", pa, "better machine probability")
                          ->capture_default_str();
  CLI::Option* o_pb = bp->add_option("--pb", pb, "worse machine probability")
                          ->capture_default_str();
  std::vector<std::string> baselines;
  bp->add_option("--baseline", baselines,
                 "add a baseline arm (repeatable): egreedy, softmax, ucb1t")
      ->check(CLI::IsMember({"egreedy", "softmax", "ucb1t"}));

  // run-cbp
  CLI::App* cbp = app.add_subcommand(
      "run-cbp",
      "multi-player competitive run; writes records.csv and summary.csv");
  CommonFlags cbp_flags;
  add_common_flags(cbp, cbp_flags, FlagSet::Competitive);

  // run-epd
  CLI::App* epd = app.add_subcommand(
      "run-epd", "three-player extended prisoner's dilemma run; writes "
                 "records.csv and summary.csv");
  CommonFlags epd_flags;
  epd_flags.omega = "auto";
  add_common_flags(epd, epd_flags, FlagSet::Epd);
  std::string epd_table = "builtin";
  CLI::Option* o_epd_table =
      epd->add_option("--table", epd_table,
                      "reward table CSV ('builtin' for the bundled one)")
          ->capture_default_str();

  // sweep
  CLI::App* sw = app.add_subcommand(
      "sweep", "one summary row per (fluctuation kind, amplitude); writes "
               "sweep.csv");
  CommonFlags sw_flags;
  add_common_flags(sw, sw_flags, FlagSet::Sweep);
  std::vector<std::string> sw_kinds = {"fixed", "random", "external"};
  sw->add_option("--fluct", sw_kinds, "fluctuation kinds (repeatable)")
      ->delimiter(',')
      ->check(CLI::IsMember({"none", "fixed", "random", "m-random", "external"}))
      ->capture_default_str();
  std::vector<double> sw_amplitudes = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  sw->add_option("--amplitudes", sw_amplitudes, "amplitude grid")
      ->delimiter(',')
      ->capture_default_str();

  // verify-tables
  CLI::App* vt = app.add_subcommand(
      "verify-tables",
      "check payoff tables and the EPD table against independent oracles");
  std::string vt_table;
  CLI::Option* o_vt_table = vt->add_option(
      "--table", vt_table, "verify an external EPD table CSV instead");

  // verify-invariants
  CLI::App* vi = app.add_subcommand(
      "verify-invariants", "conservation and identity property suites");
  std::uint64_t vi_seed = 1;
  vi->add_option("--seed", vi_seed, "master seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (bp->parsed())
      return cmd_run_bp(bp_flags, pa, pb, o_pa->count() > 0, o_pb->count() > 0,
                        baselines);
    if (cbp->parsed()) return cmd_run_cbp(cbp_flags);
    if (epd->parsed())
      return cmd_run_epd(epd_flags, epd_table, o_epd_table->count() > 0);
    if (sw->parsed()) return cmd_sweep(sw_flags, sw_kinds, sw_amplitudes);
    if (vt->parsed())
      return cmd_verify_tables(vt_table, o_vt_table->count() > 0);
    if (vi->parsed()) return cmd_verify_invariants(vi_seed);
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const tow::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const tow::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
