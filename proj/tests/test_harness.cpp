#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tow/errors.hpp"
#include "tow/harness.hpp"

using namespace tow;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "tow_harness_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Small but non-trivial experiment for the determinism checks.
ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.samples = 20;
  cfg.plays = 60;
  cfg.seed = 9;
  return cfg;
}

}  // namespace

TEST_CASE("per-sample streams are reproducible and distinct") {
  RngStream a = rng_stream(7, 3);
  RngStream b = rng_stream(7, 3);
  RngStream c = rng_stream(7, 4);
  bool all_equal = true;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next();
    if (va != b.next()) all_equal = false;
    if (va == c.next()) continue;
  }
  CHECK(all_equal);
  // Different stream: first draws already diverge.
  RngStream d = rng_stream(7, 3);
  RngStream e = rng_stream(7, 5);
  CHECK(d.next() != e.next());
  CHECK(stream_seed(7, 3) != stream_seed(7, 4));
  CHECK(stream_seed(7, 3) != stream_seed(8, 3));
}

TEST_CASE("config files: full round-trip of every section") {
  const std::string path = write_temp("full.ini", R"(# full example
[environment]
kind = bernoulli
probs = 0.9, 0.2          # trailing comment
players = 2
policy = split-value

[dynamics]
plays = 500
samples = 40
omega = auto
estimator = laplace
delta_on_split = proportional
window = 50
seed = 123
workers = 4
baselines = egreedy, ucb1t

[fluctuation]
kind = external
amplitude = 1.5
depth = 3
generalized_fixed = true

[output]
dir = out/subdir
)");
  const ExperimentConfig cfg = load_config_file(path);
  CHECK(cfg.env_kind == EnvKind::Bernoulli);
  CHECK(cfg.probs == std::vector<double>{0.9, 0.2});
  CHECK(cfg.players == 2);
  CHECK(cfg.policy == CollisionPolicy::SplitValue);
  CHECK(cfg.plays == 500);
  CHECK(cfg.samples == 40);
  CHECK(cfg.omega_mode == OmegaMode::Adaptive);
  CHECK(cfg.estimator == Estimator::Laplace);
  CHECK(cfg.delta_on_split == DeltaOnSplit::Proportional);
  CHECK(cfg.window == 50);
  CHECK(cfg.seed == 123);
  CHECK(cfg.workers == 4);
  REQUIRE(cfg.bp_baselines.size() == 2);
  CHECK(cfg.bp_baselines[0] == BaselineKind::EpsilonGreedy);
  CHECK(cfg.bp_baselines[1] == BaselineKind::Ucb1Tuned);
  CHECK(cfg.fluct.kind == FluctuationKind::ExternalOscillation);
  CHECK(cfg.fluct.amplitude == 1.5);
  CHECK(cfg.fluct.depth == 3);
  CHECK(cfg.fluct.generalized_fixed == true);
  CHECK(cfg.out_dir == "out/subdir");
}

TEST_CASE("config files: unspecified keys keep the base values") {
  ExperimentConfig base;
  base.omega = 0.5;
  base.plays = 777;
  base.fluct.amplitude = 9.0;
  const std::string path = write_temp("partial.ini", "[dynamics]\nplays = 10\n");
  const ExperimentConfig cfg = load_config_file(path, base);
  CHECK(cfg.plays == 10);        // from the file
  CHECK(cfg.omega == 0.5);       // inherited from base
  CHECK(cfg.fluct.amplitude == 9.0);
  CHECK(cfg.probs.size() == 5);  // canonical default untouched
}

TEST_CASE("config files: numeric omega selects the fixed mode") {
  const std::string path = write_temp("omega.ini", "[dynamics]\nomega = 0.25\n");
  ExperimentConfig base;
  base.omega_mode = OmegaMode::Adaptive;
  const ExperimentConfig cfg = load_config_file(path, base);
  CHECK(cfg.omega_mode == OmegaMode::Fixed);
  CHECK(cfg.omega == 0.25);
}

TEST_CASE("config files: 'builtin' clears the external table path") {
  ExperimentConfig base;
  base.epd_table_path = "somewhere.csv";
  const std::string path =
      write_temp("table.ini", "[environment]\ntable = builtin\n");
  CHECK(load_config_file(path, base).epd_table_path.empty());
}

TEST_CASE("config files: errors carry the file and line") {
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/nowhere.ini"), IoError);
  }
  SUBCASE("unknown key") {
    const std::string path =
        write_temp("badkey.ini", "[dynamics]\nplays = 5\nbogus = 1\n");
    try {
      load_config_file(path);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      const std::string msg = e.what();
      CHECK(msg.find(":3") != std::string::npos);
      CHECK(msg.find("bogus") != std::string::npos);
    }
  }
  SUBCASE("unknown section") {
    const std::string path = write_temp("badsec.ini", "[nope]\nx = 1\n");
    CHECK_THROWS_AS(load_config_file(path), DataError);
  }
  SUBCASE("key outside a section") {
    const std::string path = write_temp("nosec.ini", "plays = 5\n");
    CHECK_THROWS_AS(load_config_file(path), DataError);
  }
  SUBCASE("malformed line") {
    const std::string path = write_temp("noval.ini", "[dynamics]\nplays\n");
    CHECK_THROWS_AS(load_config_file(path), DataError);
  }
  SUBCASE("bad token values") {
    CHECK_THROWS_AS(
        load_config_file(write_temp("badfluct.ini",
                                    "[fluctuation]\nkind = sine\n")),
        DataError);
    CHECK_THROWS_AS(
        load_config_file(write_temp("badnum.ini",
                                    "[dynamics]\nplays = many\n")),
        DataError);
  }
}

TEST_CASE("the config echo names every resolved field") {
  const ExperimentConfig cfg;
  const std::string echo = config_echo(cfg);
  for (const char* line :
       {"environment.kind = bernoulli",
        "environment.probs = 0.03,0.05,0.1,0.2,0.9", "environment.players = 3",
        "environment.policy = split-prob", "dynamics.plays = 1000",
        "dynamics.samples = 1000", "dynamics.omega = 0.08",
        "dynamics.estimator = direct", "dynamics.delta_on_split = binary",
        "dynamics.window = 100", "dynamics.seed = 1", "dynamics.workers = 1",
        "fluctuation.kind = random", "fluctuation.amplitude = 2",
        "fluctuation.depth = 10", "fluctuation.generalized_fixed = false",
        "output.dir = ."}) {
    INFO(line);
    CHECK(echo.find(line) != std::string::npos);
  }

  ExperimentConfig epd = cfg;
  epd.env_kind = EnvKind::Epd;
  CHECK(config_echo(epd).find("environment.table = builtin") !=
        std::string::npos);

  ExperimentConfig gen = cfg;
  gen.env_kind = EnvKind::General;
  gen.means = {0.6, 0.4};
  gen.variances = {0.02, 0.02};
  const std::string gecho = config_echo(gen);
  CHECK(gecho.find("environment.means = 0.6,0.4") != std::string::npos);
  CHECK(gecho.find("environment.dist = uniform") != std::string::npos);

  SUBCASE("the fingerprint is stable and field-sensitive") {
    CHECK(config_fingerprint(cfg).size() == 16);
    CHECK(config_fingerprint(cfg) == config_fingerprint(ExperimentConfig{}));
    ExperimentConfig other = cfg;
    other.seed = 2;
    CHECK(config_fingerprint(other) != config_fingerprint(cfg));
  }
}

TEST_CASE("experiments are deterministic in (config, seed)") {
  const ExperimentConfig cfg = small_config();
  const ExperimentResult a = run_experiment(cfg);
  const ExperimentResult b = run_experiment(cfg);
  REQUIRE(a.records.size() == 20);
  REQUIRE(a.outcomes.size() == 20);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].scores == b.records[i].scores);
    CHECK(a.records[i].hist == b.records[i].hist);
    CHECK(a.records[i].seed == b.records[i].seed);
    CHECK(a.records[i].seed == stream_seed(cfg.seed, i));
    CHECK(a.records[i].sample == i);
  }
  CHECK(a.summary.mean_total == b.summary.mean_total);

  SUBCASE("worker count does not change the results") {
    ExperimentConfig par = cfg;
    par.workers = 4;
    const ExperimentResult c = run_experiment(par);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(c.records[i].scores == a.records[i].scores);
      CHECK(c.records[i].hist == a.records[i].hist);
    }
    CHECK(c.summary.mean_total == a.summary.mean_total);
  }
  SUBCASE("a different seed gives different realizations") {
    ExperimentConfig other = cfg;
    other.seed = 10;
    const ExperimentResult c = run_experiment(other);
    CHECK(c.records[0].scores != a.records[0].scores);
  }
  SUBCASE("the summary is the aggregate of the records") {
    const Summary s = aggregate(a.records, a.outcomes);
    CHECK(a.summary.mean_total == doctest::Approx(s.mean_total));
    CHECK(a.summary.sm_freq == s.sm_freq);
    CHECK(a.summary.player_bias == doctest::Approx(s.player_bias));
    CHECK(a.summary.plays == cfg.plays);
  }
}

TEST_CASE("experiment validation") {
  ExperimentConfig cfg = small_config();
  cfg.samples = 0;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.players = 1;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.env_kind = EnvKind::General;
  cfg.means = {0.6, 0.4};
  cfg.variances = {0.02, 0.02};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
  cfg = small_config();
  cfg.env_kind = EnvKind::Epd;
  cfg.players = 4;
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("no fluctuation and zero-amplitude rotation coincide exactly") {
  // Neither consumes randomness, so the reward streams line up draw-for-draw.
  ExperimentConfig none = small_config();
  none.fluct = FluctuationSpec{};
  ExperimentConfig fixed0 = small_config();
  fixed0.fluct = FluctuationSpec(FluctuationKind::InternalFixed, 0.0);
  const ExperimentResult a = run_experiment(none);
  const ExperimentResult b = run_experiment(fixed0);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].scores == b.records[i].scores);
    CHECK(a.records[i].hist == b.records[i].hist);
  }
}

TEST_CASE("zero-amplitude cells of different kinds are indistinguishable") {
  // Random kinds still consume randomness at A = 0, so exact equality is
  // lost, but the totals must come from the same distribution.
  ExperimentConfig a_cfg = small_config();
  a_cfg.samples = 80;
  a_cfg.plays = 200;
  a_cfg.seed = 100;
  a_cfg.fluct = FluctuationSpec(FluctuationKind::InternalRandom, 0.0);
  ExperimentConfig b_cfg = a_cfg;
  b_cfg.seed = 200;
  b_cfg.fluct = FluctuationSpec(FluctuationKind::InternalFixed, 0.0);
  const auto ta = record_totals(run_experiment(a_cfg).records);
  const auto tb = record_totals(run_experiment(b_cfg).records);
  const WelchTest w = welch_t(ta, tb);
  INFO("t = ", w.t);
  CHECK_FALSE(w.significant_1pct);
}

TEST_CASE("sweeps enumerate (kind, amplitude) cells kind-major") {
  SweepSpec spec;
  spec.kinds = {FluctuationKind::None, FluctuationKind::InternalFixed};
  spec.amplitudes = {0.0, 2.0};
  spec.base = small_config();
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].kind == FluctuationKind::None);
  CHECK(rows[0].amplitude == 0.0);
  CHECK(rows[1].kind == FluctuationKind::None);
  CHECK(rows[1].amplitude == 2.0);
  CHECK(rows[2].kind == FluctuationKind::InternalFixed);
  CHECK(rows[3].amplitude == 2.0);

  // Cell 0 uses stream offset 0, so it reproduces a direct run exactly.
  ExperimentConfig direct = small_config();
  direct.fluct = FluctuationSpec(FluctuationKind::None, 0.0);
  const ExperimentResult r = run_experiment(direct);
  CHECK(rows[0].summary.mean_total == doctest::Approx(r.summary.mean_total));
  CHECK(rows[0].summary.sm_freq == r.summary.sm_freq);
}

TEST_CASE("two-machine runs: arms, determinism, regret shape") {
  ExperimentConfig cfg;
  cfg.probs = {0.9, 0.2};
  cfg.players = 1;
  cfg.plays = 1500;
  cfg.samples = 150;
  cfg.seed = 11;
  cfg.omega = omega0(1.1);
  cfg.fluct = FluctuationSpec(FluctuationKind::None, 1.0);
  cfg.bp_baselines = {BaselineKind::EpsilonGreedy, BaselineKind::Ucb1Tuned};

  const BpResult res = run_bp(cfg);
  REQUIRE(res.arms.size() == 3);
  CHECK(res.arms[0].name == "tow");
  CHECK(res.arms[1].name == "egreedy");
  CHECK(res.arms[2].name == "ucb1t");

  for (const BpArm& arm : res.arms) {
    REQUIRE(arm.mean_regret.size() == 1500);
    CHECK(arm.accuracy >= 0.0);
    CHECK(arm.accuracy <= 1.0);
    for (std::size_t t = 1; t < arm.mean_regret.size(); ++t)
      CHECK(arm.mean_regret[t] >= arm.mean_regret[t - 1] - 1e-12);
  }

  SUBCASE("the tug-of-war arm identifies the machine and flattens") {
    CHECK(res.arms[0].accuracy > 0.9);
    const double early = res.arms[0].mean_regret[149] - res.arms[0].mean_regret[0];
    const double late = res.arms[0].mean_regret[1499] - res.arms[0].mean_regret[999];
    CHECK(late < 0.5 * early);
  }
  SUBCASE("reruns are identical") {
    const BpResult again = run_bp(cfg);
    CHECK(again.arms[0].mean_regret == res.arms[0].mean_regret);
    CHECK(again.arms[2].mean_regret == res.arms[2].mean_regret);
  }
  SUBCASE("validation") {
    ExperimentConfig bad = cfg;
    bad.probs = {0.9, 0.2, 0.1};
    CHECK_THROWS_AS(run_bp(bad), std::invalid_argument);
    bad = cfg;
    bad.probs = {0.2, 0.9};
    CHECK_THROWS_AS(run_bp(bad), std::invalid_argument);
    bad = cfg;
    bad.env_kind = EnvKind::Epd;
    CHECK_THROWS_AS(run_bp(bad), std::invalid_argument);
  }
}

TEST_CASE("two-machine runs accept the general reward model") {
  ExperimentConfig cfg;
  cfg.env_kind = EnvKind::General;
  cfg.means = {0.6, 0.4};
  cfg.variances = {0.02, 0.02};
  cfg.players = 1;
  cfg.plays = 400;
  cfg.samples = 40;
  cfg.seed = 12;
  cfg.fluct = FluctuationSpec(FluctuationKind::None, 1.0);
  const BpResult res = run_bp(cfg);
  REQUIRE(res.arms.size() == 1);
  CHECK(res.arms[0].mean_regret.size() == 400);
  CHECK(res.arms[0].accuracy > 0.8);
}

TEST_CASE("record totals and Welch's t") {
  RunRecord a, b;
  a.scores = {1.0, 2.0};
  b.scores = {10.0, 20.0};
  CHECK(record_totals({a, b}) == std::vector<double>{3.0, 30.0});

  SUBCASE("hand-computed example") {
    const WelchTest w =
        welch_t({1.0, 2.0, 3.0, 4.0, 5.0}, {2.0, 3.0, 4.0, 5.0, 6.0});
    CHECK(w.t == doctest::Approx(-1.0));
    CHECK(w.df == doctest::Approx(8.0));
    CHECK_FALSE(w.significant_1pct);
  }
  SUBCASE("a clear shift is significant") {
    std::vector<double> lo(30), hi(30);
    for (int i = 0; i < 30; ++i) {
      lo[i] = 0.0 + 0.1 * (i % 5);
      hi[i] = 5.0 + 0.1 * (i % 7);
    }
    const WelchTest w = welch_t(lo, hi);
    CHECK(w.significant_1pct);
    CHECK(w.t < 0.0);
    const WelchTest r = welch_t(hi, lo);
    CHECK(r.t == doctest::Approx(-w.t));
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(welch_t({1.0}, {1.0, 2.0}), std::invalid_argument);
  }
}

TEST_CASE("CSV writers: schemas, self-description, byte-stable reruns") {
  const ExperimentConfig cfg = small_config();
  const ExperimentResult res = run_experiment(cfg);
  const fs::path dir = scratch_dir();

  SUBCASE("records file") {
    const std::string p1 = (dir / "records_a.csv").string();
    const std::string p2 = (dir / "records_b.csv").string();
    write_records_csv(p1, cfg, res.records, res.outcomes);
    write_records_csv(p2, cfg, res.records, res.outcomes);
    const std::string body = slurp(p1);
    CHECK(body == slurp(p2));
    CHECK(body.find("# environment.kind = bernoulli") != std::string::npos);
    CHECK(body.find("# fingerprint = " + config_fingerprint(cfg)) !=
          std::string::npos);
    CHECK(body.find("sample,seed,score_1,score_2,score_3,outcome,max_fluct") !=
          std::string::npos);
    // Integer scores under probability splitting.
    CHECK(body.find("0," + std::to_string(stream_seed(cfg.seed, 0)) + ",") !=
          std::string::npos);
  }
  SUBCASE("summary file") {
    SweepSpec spec;
    spec.kinds = {FluctuationKind::InternalRandom};
    spec.amplitudes = {2.0};
    spec.base = cfg;
    const auto rows = run_sweep(spec);
    const std::string p = (dir / "nested" / "deeper" / "summary.csv").string();
    write_summary_csv(p, cfg, rows);  // creates the directories
    const std::string body = slurp(p);
    CHECK(body.find("kind,A,D,omega_mode,samples,plays,mean_total,"
                    "mean_fairness,sm_freq,ne_freq,other_freq,"
                    "mean_max_fluct") != std::string::npos);
    CHECK(body.find("random,2,10,0.08,20,60,") != std::string::npos);

    ExperimentConfig adaptive = cfg;
    adaptive.omega_mode = OmegaMode::Adaptive;
    const std::string pa = (dir / "summary_auto.csv").string();
    write_summary_csv(pa, adaptive, rows);
    CHECK(slurp(pa).find("random,2,10,auto,") != std::string::npos);
  }
  SUBCASE("regret file") {
    ExperimentConfig bp = cfg;
    bp.probs = {0.9, 0.2};
    bp.players = 1;
    bp.plays = 30;
    bp.samples = 10;
    bp.fluct = FluctuationSpec(FluctuationKind::None, 1.0);
    bp.bp_baselines = {BaselineKind::Softmax};
    const BpResult res_bp = run_bp(bp);
    const std::string p = (dir / "regret.csv").string();
    write_regret_csv(p, bp, res_bp);
    const std::string body = slurp(p);
    CHECK(body.find("t,regret_tow,regret_softmax") != std::string::npos);
    CHECK(body.find("\n1,") != std::string::npos);
    CHECK(body.find("\n30,") != std::string::npos);
    CHECK_THROWS_AS(write_regret_csv(p, bp, BpResult{}),
                    std::invalid_argument);
  }
  SUBCASE("unwritable paths raise the I/O category") {
    const std::string blocker = write_temp("blocker", "plain file\n");
    CHECK_THROWS_AS(
        write_records_csv(blocker + "/sub.csv", cfg, res.records, res.outcomes),
        IoError);
  }
}
