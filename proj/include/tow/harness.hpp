#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tow/baselines.hpp"
#include "tow/bombe.hpp"
#include "tow/environment.hpp"
#include "tow/fluctuations.hpp"
#include "tow/metrics.hpp"
#include "tow/rng.hpp"
#include "tow/tow_core.hpp"

namespace tow {

enum class EnvKind { Bernoulli, Epd, General };

// Fully resolved experiment description. The defaults reproduce the canonical
// competitive experiment: probabilities (0.03, 0.05, 0.1, 0.2, 0.9), three
// players, 1,000 plays, 1,000 samples, internal random fluctuations.
struct ExperimentConfig {
  EnvKind env_kind = EnvKind::Bernoulli;
  std::vector<double> probs = {0.03, 0.05, 0.1, 0.2, 0.9};
  std::size_t players = 3;
  CollisionPolicy policy = CollisionPolicy::SplitProbability;

  // General reward model (env_kind == General only).
  std::vector<double> means;
  std::vector<double> variances;
  double rbound = 1.0;
  RewardDist dist = RewardDist::UniformOnInterval;

  std::size_t plays = 1000;
  std::size_t samples = 1000;
  OmegaMode omega_mode = OmegaMode::Fixed;
  double omega = 0.08;
  Estimator estimator = Estimator::Direct;
  DeltaOnSplit delta_on_split = DeltaOnSplit::Binary;
  std::size_t window = 100;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  // Default amplitude 2 sits mid-grid: the canonical runs hold the social
  // maximum across A in [0.5, 16] under internal random fluctuations.
  FluctuationSpec fluct{FluctuationKind::InternalRandom, 2.0, 10};

  // Two-machine runs: add-on baseline arms for side-by-side regret curves.
  std::vector<BaselineKind> bp_baselines;

  // EPD runs: external table file (empty = the built-in transcription).
  std::string epd_table_path;

  std::string out_dir = ".";

  std::size_t machines() const {
    return env_kind == EnvKind::General ? means.size() : probs.size();
  }
};

struct SweepSpec {
  std::vector<FluctuationKind> kinds;
  std::vector<double> amplitudes;
  ExperimentConfig base;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<OutcomeClass> outcomes;
  Summary summary;
};

struct SweepRow {
  FluctuationKind kind = FluctuationKind::None;
  double amplitude = 0.0;
  Summary summary;
};

// One arm of a two-machine comparison run.
struct BpArm {
  std::string name;                 // "tow" or a baseline token
  std::vector<double> mean_regret;  // sample-averaged, one entry per step
  double mean_score = 0.0;
  double accuracy = 0.0;  // fraction of samples with N_best > N_other
};

struct BpResult {
  std::vector<BpArm> arms;  // arms[0] is always the tug-of-war player
};

// Per-sample random stream derived from the master seed; stream id = sample
// index (multi-arm runs use id = arm * samples + sample).
RngStream rng_stream(std::uint64_t master_seed, std::uint64_t stream_id);

// INI-style config: sections [environment], [dynamics], [fluctuation],
// [output]; `key = value` lines; '#' comments. Unknown sections or keys are
// rejected (DataError), unreadable files raise IoError. Values not given keep
// the fields of `base` (canonical defaults by default), so precedence is
// flags > file > defaults.
ExperimentConfig load_config_file(const std::string& path,
                                  ExperimentConfig base = ExperimentConfig{});

// Canonical echo of every resolved field (one "section.key = value" line
// each) and its FNV-1a fingerprint; the echo is embedded as comment lines in
// every output file, making outputs self-describing and byte-reproducible.
std::string config_echo(const ExperimentConfig& cfg);
std::string config_fingerprint(const ExperimentConfig& cfg);

// Seeded Monte Carlo over samples; deterministic for a given (config, seed)
// regardless of worker count. Bernoulli environments need players >= 2 here
// (two-machine single-player runs use run_bp).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One aggregate row per (kind, amplitude) cell; cell index c uses stream ids
// c*samples .. c*samples+samples-1, so cells are independent and
// order-independent.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Single-player two-machine run: tug-of-war dynamics (ω fixed or adaptive)
// with δ drawn uniformly from [-A, A], plus optional baseline arms.
BpResult run_bp(const ExperimentConfig& cfg);

// Writers create the directory if needed and raise IoError with the path on
// failure. Bodies contain no timestamps: reruns are byte-identical.
void write_records_csv(const std::string& path, const ExperimentConfig& cfg,
                       const std::vector<RunRecord>& records,
                       const std::vector<OutcomeClass>& outcomes);
void write_summary_csv(const std::string& path, const ExperimentConfig& cfg,
                       const std::vector<SweepRow>& rows);
void write_regret_csv(const std::string& path, const ExperimentConfig& cfg,
                      const BpResult& result);

// Small shared statistics helpers.
std::vector<double> record_totals(const std::vector<RunRecord>& records);

struct WelchTest {
  double t = 0.0;
  double df = 0.0;
  bool significant_1pct = false;  // |t| > 2.576 (normal approximation)
};
WelchTest welch_t(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tow
