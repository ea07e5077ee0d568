#include "tow/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "tow/errors.hpp"

namespace tow {

RngStream rng_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

// --- config parsing ---------------------------------------------------------

static std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

static std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

static std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_num(v[i]);
  }
  return out;
}

static std::vector<double> parse_list(const std::string& s, const std::string& ctx) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ',')) {
    field = trim(field);
    if (field.empty()) throw DataError(ctx + ": empty list entry");
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(field, &pos));
      if (pos != field.size()) throw DataError(ctx + ": trailing characters");
    } catch (const std::logic_error&) {
      throw DataError(ctx + ": not a number: " + field);
    }
  }
  if (out.empty()) throw DataError(ctx + ": empty list");
  return out;
}

static double parse_num(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw DataError(ctx + ": trailing characters in " + s);
    return v;
  } catch (const std::logic_error&) {
    throw DataError(ctx + ": not a number: " + s);
  }
}

static long long parse_int(const std::string& s, const std::string& ctx) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw DataError(ctx + ": trailing characters in " + s);
    return v;
  } catch (const std::logic_error&) {
    throw DataError(ctx + ": not an integer: " + s);
  }
}

static bool parse_bool(const std::string& s, const std::string& ctx) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw DataError(ctx + ": expected true|false, got " + s);
}

static void apply_key(ExperimentConfig& cfg, const std::string& section,
                      const std::string& key, const std::string& value,
                      const std::string& ctx) {
  if (section == "environment") {
    if (key == "kind") {
      if (value == "bernoulli") cfg.env_kind = EnvKind::Bernoulli;
      else if (value == "epd") cfg.env_kind = EnvKind::Epd;
      else if (value == "general") cfg.env_kind = EnvKind::General;
      else throw DataError(ctx + ": unknown environment kind " + value);
    } else if (key == "probs") {
      cfg.probs = parse_list(value, ctx);
    } else if (key == "players") {
      cfg.players = static_cast<std::size_t>(parse_int(value, ctx));
    } else if (key == "policy") {
      if (value == "split-prob") cfg.policy = CollisionPolicy::SplitProbability;
      else if (value == "split-value") cfg.policy = CollisionPolicy::SplitValue;
      else throw DataError(ctx + ": unknown policy " + value);
    } else if (key == "means") {
      cfg.means = parse_list(value, ctx);
    } else if (key == "variances") {
      cfg.variances = parse_list(value, ctx);
    } else if (key == "rbound") {
      cfg.rbound = parse_num(value, ctx);
    } else if (key == "dist") {
      if (value == "uniform") cfg.dist = RewardDist::UniformOnInterval;
      else if (value == "gaussian") cfg.dist = RewardDist::TruncatedGaussian;
      else throw DataError(ctx + ": unknown distribution " + value);
    } else if (key == "table") {
      cfg.epd_table_path = value == "builtin" ? "" : value;
    } else {
      throw DataError(ctx + ": unknown key [environment] " + key);
    }
  } else if (section == "dynamics") {
    if (key == "plays") cfg.plays = static_cast<std::size_t>(parse_int(value, ctx));
    else if (key == "samples") cfg.samples = static_cast<std::size_t>(parse_int(value, ctx));
    else if (key == "omega") {
      if (value == "auto") cfg.omega_mode = OmegaMode::Adaptive;
      else {
        cfg.omega_mode = OmegaMode::Fixed;
        cfg.omega = parse_num(value, ctx);
      }
    } else if (key == "estimator") {
      if (value == "direct") cfg.estimator = Estimator::Direct;
      else if (value == "laplace") cfg.estimator = Estimator::Laplace;
      else throw DataError(ctx + ": unknown estimator " + value);
    } else if (key == "delta_on_split") {
      if (value == "binary") cfg.delta_on_split = DeltaOnSplit::Binary;
      else if (value == "proportional") cfg.delta_on_split = DeltaOnSplit::Proportional;
      else throw DataError(ctx + ": unknown delta_on_split " + value);
    } else if (key == "window") {
      cfg.window = static_cast<std::size_t>(parse_int(value, ctx));
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(value, ctx));
    } else if (key == "workers") {
      cfg.workers = static_cast<std::size_t>(parse_int(value, ctx));
    } else if (key == "baselines") {
      cfg.bp_baselines.clear();
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) cfg.bp_baselines.push_back(parse_baseline_kind(tok));
      }
    } else {
      throw DataError(ctx + ": unknown key [dynamics] " + key);
    }
  } else if (section == "fluctuation") {
    if (key == "kind") {
      try {
        cfg.fluct.kind = parse_fluctuation_kind(value);
      } catch (const std::invalid_argument& e) {
        throw DataError(ctx + ": " + e.what());
      }
    } else if (key == "amplitude") {
      cfg.fluct.amplitude = parse_num(value, ctx);
    } else if (key == "depth") {
      cfg.fluct.depth = static_cast<int>(parse_int(value, ctx));
    } else if (key == "generalized_fixed") {
      cfg.fluct.generalized_fixed = parse_bool(value, ctx);
    } else {
      throw DataError(ctx + ": unknown key [fluctuation] " + key);
    }
  } else if (section == "output") {
    if (key == "dir") cfg.out_dir = value;
    else throw DataError(ctx + ": unknown key [output] " + key);
  } else {
    throw DataError(ctx + ": unknown section [" + section + "]");
  }
}

ExperimentConfig load_config_file(const std::string& path,
                                  ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  ExperimentConfig cfg = std::move(base);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string ctx = path + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw DataError(ctx + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DataError(ctx + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw DataError(ctx + ": key outside any section");
    if (key.empty() || value.empty()) throw DataError(ctx + ": empty key or value");
    apply_key(cfg, section, key, value, ctx);
  }
  return cfg;
}

static std::string env_kind_token(EnvKind k) {
  switch (k) {
    case EnvKind::Bernoulli: return "bernoulli";
    case EnvKind::Epd: return "epd";
    case EnvKind::General: return "general";
  }
  return "bernoulli";
}

std::string config_echo(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "environment.kind = " << env_kind_token(cfg.env_kind) << "\n";
  if (cfg.env_kind == EnvKind::General) {
    out << "environment.means = " << fmt_list(cfg.means) << "\n"
        << "environment.variances = " << fmt_list(cfg.variances) << "\n"
        << "environment.rbound = " << fmt_num(cfg.rbound) << "\n"
        << "environment.dist = "
        << (cfg.dist == RewardDist::UniformOnInterval ? "uniform" : "gaussian")
        << "\n";
  } else {
    out << "environment.probs = " << fmt_list(cfg.probs) << "\n";
  }
  if (cfg.env_kind == EnvKind::Epd)
    out << "environment.table = "
        << (cfg.epd_table_path.empty() ? "builtin" : cfg.epd_table_path) << "\n";
  out << "environment.players = " << cfg.players << "\n"
      << "environment.policy = "
      << (cfg.policy == CollisionPolicy::SplitProbability ? "split-prob"
                                                          : "split-value")
      << "\n"
      << "dynamics.plays = " << cfg.plays << "\n"
      << "dynamics.samples = " << cfg.samples << "\n"
      << "dynamics.omega = "
      << (cfg.omega_mode == OmegaMode::Adaptive ? std::string("auto")
                                                : fmt_num(cfg.omega))
      << "\n"
      << "dynamics.estimator = "
      << (cfg.estimator == Estimator::Direct ? "direct" : "laplace") << "\n"
      << "dynamics.delta_on_split = "
      << (cfg.delta_on_split == DeltaOnSplit::Binary ? "binary" : "proportional")
      << "\n"
      << "dynamics.window = " << cfg.window << "\n"
      << "dynamics.seed = " << cfg.seed << "\n"
      << "dynamics.workers = " << cfg.workers << "\n";
  out << "dynamics.baselines = ";
  for (std::size_t i = 0; i < cfg.bp_baselines.size(); ++i) {
    if (i) out << ",";
    out << baseline_kind_token(cfg.bp_baselines[i]);
  }
  out << "\n"
      << "fluctuation.kind = " << fluctuation_kind_token(cfg.fluct.kind) << "\n"
      << "fluctuation.amplitude = " << fmt_num(cfg.fluct.amplitude) << "\n"
      << "fluctuation.depth = " << cfg.fluct.depth << "\n"
      << "fluctuation.generalized_fixed = "
      << (cfg.fluct.generalized_fixed ? "true" : "false") << "\n"
      << "output.dir = " << cfg.out_dir << "\n";
  return out.str();
}

std::string config_fingerprint(const ExperimentConfig& cfg) {
  const std::string echo = config_echo(cfg);
  std::uint64_t h = 14695981039346656037ULL;  // FNV-1a 64
  for (unsigned char c : echo) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- experiment execution ---------------------------------------------------

static void validate_run(const ExperimentConfig& cfg) {
  if (cfg.plays < 1 || cfg.samples < 1)
    throw std::invalid_argument("plays and samples must be >= 1");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (cfg.fluct.depth < 1) throw std::invalid_argument("depth must be >= 1");
}

// Runs all samples of one experiment cell; stream ids are offset so sweep
// cells never share streams.
static ExperimentResult run_cell(const ExperimentConfig& cfg,
                                 std::uint64_t stream_offset) {
  validate_run(cfg);
  if (cfg.env_kind == EnvKind::General)
    throw std::invalid_argument("general-reward runs are two-machine single-player (run_bp)");
  if (cfg.env_kind == EnvKind::Epd && (cfg.players != 3 || cfg.machines() != 5))
    throw std::invalid_argument("the EPD game is 3 players x 5 options");

  BombeConfig bc;
  bc.m = cfg.players;
  bc.n = cfg.machines();
  bc.omega_mode = cfg.omega_mode;
  bc.omega = cfg.omega;
  bc.estimator = cfg.estimator;
  bc.policy = cfg.policy;
  bc.delta_on_split = cfg.delta_on_split;
  bc.window = cfg.window;

  // Environments are immutable and shared; each sample owns its stream.
  const MachineSet machines(cfg.env_kind == EnvKind::Bernoulli
                                ? cfg.probs
                                : std::vector<double>(5, 0.5));
  const EpdTable table = cfg.epd_table_path.empty()
                             ? builtin_epd_table()
                             : load_epd_table(cfg.epd_table_path);
  const std::string fingerprint = config_fingerprint(cfg);

  ExperimentResult result;
  result.records.resize(cfg.samples);
  result.outcomes.resize(cfg.samples);

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cfg.samples) return;
      try {
        RngStream rng = rng_stream(cfg.seed, stream_offset + i);
        RunRecord rec =
            cfg.env_kind == EnvKind::Bernoulli
                ? run_episode(bc, machines, cfg.fluct, cfg.plays, rng)
                : run_epd_episode(bc, table, cfg.fluct, cfg.plays, rng);
        rec.sample = i;
        rec.seed = stream_seed(cfg.seed, stream_offset + i);
        rec.config_fingerprint = fingerprint;
        result.outcomes[i] =
            cfg.env_kind == EnvKind::Bernoulli
                ? classify_outcome(rec, machines, cfg.players)
                : classify_epd_outcome(rec, table);
        result.records[i] = std::move(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t nthreads = std::min(cfg.workers, cfg.samples);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  result.summary = aggregate(result.records, result.outcomes);
  result.summary.plays = cfg.plays;
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  return run_cell(cfg, 0);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.kinds.empty() || spec.amplitudes.empty())
    throw std::invalid_argument("sweep needs at least one kind and one amplitude");
  std::vector<SweepRow> rows;
  std::uint64_t cell = 0;
  for (FluctuationKind kind : spec.kinds) {
    for (double a : spec.amplitudes) {
      ExperimentConfig cfg = spec.base;
      cfg.fluct.kind = kind;
      cfg.fluct.amplitude = a;
      SweepRow row;
      row.kind = kind;
      row.amplitude = a;
      row.summary = run_cell(cfg, cell * cfg.samples).summary;
      rows.push_back(std::move(row));
      ++cell;
    }
  }
  return rows;
}

// --- two-machine single-player runs ------------------------------------------

BpResult run_bp(const ExperimentConfig& cfg) {
  validate_run(cfg);
  const bool general = cfg.env_kind == EnvKind::General;
  if (general) {
    if (cfg.means.size() != 2 || cfg.variances.size() != 2)
      throw std::invalid_argument("general runs need exactly two machines");
    if (!(cfg.means[0] >= cfg.means[1]))
      throw std::invalid_argument("the first machine must be the better one");
  } else {
    if (cfg.env_kind != EnvKind::Bernoulli || cfg.probs.size() != 2)
      throw std::invalid_argument("run_bp needs a two-machine Bernoulli or general environment");
    if (!(cfg.probs[0] >= cfg.probs[1]))
      throw std::invalid_argument("the first machine must be the better one");
  }
  const double pa = general ? cfg.means[0] : cfg.probs[0];
  const double pb = general ? cfg.means[1] : cfg.probs[1];
  const double amplitude = cfg.fluct.amplitude;
  const GeneralRewardModel model =
      general ? GeneralRewardModel(cfg.means, cfg.variances, cfg.rbound, cfg.dist)
              : GeneralRewardModel({0.5, 0.5}, {0.0, 0.0}, 1.0);

  std::vector<std::string> arm_names = {"tow"};
  for (BaselineKind k : cfg.bp_baselines)
    arm_names.push_back(baseline_kind_token(k));

  BpResult result;
  result.arms.resize(arm_names.size());

  for (std::size_t arm = 0; arm < arm_names.size(); ++arm) {
    BpArm out;
    out.name = arm_names[arm];
    out.mean_regret.assign(cfg.plays, 0.0);
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      RngStream rng =
          rng_stream(cfg.seed, static_cast<std::uint64_t>(arm) * cfg.samples + s);
      long long na = 0, nb = 0;
      double score = 0.0;

      if (arm == 0) {
        // Tug-of-war arm: fluctuation δ ~ uniform[-A, A] each step, selection
        // by displacement sign, +1 / -ω update.
        TowState state(2, cfg.omega_mode,
                       cfg.omega_mode == OmegaMode::Fixed ? cfg.omega : 1.0);
        GeneralTowState gstate(2, (pa + pb) / 2.0, cfg.rbound);
        for (std::size_t t = 0; t < cfg.plays; ++t) {
          if (cfg.omega_mode == OmegaMode::Adaptive)
            state.omega = adaptive_omega(state.r, state.n, 1, cfg.estimator);
          const double delta = rng.uniform(-amplitude, amplitude);
          std::size_t sel;
          double reward;
          if (general) {
            sel = general_tow_select(gstate, delta, rng);
            reward = draw_general(model, sel, rng);
            gstate = general_tow_update(std::move(gstate), sel, reward);
          } else {
            sel = tow_select(state, delta, rng);
            reward = rng.bernoulli(cfg.probs[sel]) ? 1.0 : 0.0;
            state = tow_update(std::move(state), sel, reward > 0.0);
          }
          (sel == 0 ? na : nb)++;
          score += reward;
          out.mean_regret[t] += regret(pa, pb, static_cast<double>(nb));
        }
      } else {
        BaselineStrategy strat(cfg.bp_baselines[arm - 1], 2);
        for (std::size_t t = 0; t < cfg.plays; ++t) {
          const std::size_t sel = baseline_select(strat, rng);
          const double reward = general
                                    ? draw_general(model, sel, rng)
                                    : (rng.bernoulli(cfg.probs[sel]) ? 1.0 : 0.0);
          baseline_update(strat, sel, reward);
          (sel == 0 ? na : nb)++;
          score += reward;
          out.mean_regret[t] += regret(pa, pb, static_cast<double>(nb));
        }
      }
      out.mean_score += score;
      out.accuracy += na > nb ? 1.0 : (na == nb ? 0.5 : 0.0);
    }
    const double n = static_cast<double>(cfg.samples);
    for (double& v : out.mean_regret) v /= n;
    out.mean_score /= n;
    out.accuracy /= n;
    result.arms[arm] = std::move(out);
  }
  return result;
}

// --- persistence --------------------------------------------------------------

static std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + p.parent_path().string() +
                          ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);  // binary: byte-stable newlines
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

static void write_echo(std::ofstream& out, const ExperimentConfig& cfg) {
  std::istringstream echo(config_echo(cfg));
  std::string line;
  while (std::getline(echo, line)) out << "# " << line << "\n";
  out << "# fingerprint = " << config_fingerprint(cfg) << "\n";
}

static std::string fmt_score(double v, const ExperimentConfig& cfg) {
  char buf[64];
  if (cfg.policy == CollisionPolicy::SplitProbability &&
      cfg.env_kind != EnvKind::General) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(v));
  } else {
    std::snprintf(buf, sizeof buf, "%.6f", v);
  }
  return buf;
}

static std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_records_csv(const std::string& path, const ExperimentConfig& cfg,
                       const std::vector<RunRecord>& records,
                       const std::vector<OutcomeClass>& outcomes) {
  if (records.size() != outcomes.size())
    throw std::invalid_argument("records/outcomes size mismatch");
  std::ofstream out = open_out(path);
  write_echo(out, cfg);
  out << "sample,seed";
  for (std::size_t i = 1; i <= cfg.players; ++i) out << ",score_" << i;
  out << ",outcome,max_fluct\n";
  for (const RunRecord& rec : records) {
    out << rec.sample << "," << rec.seed;
    for (double s : rec.scores) out << "," << fmt_score(s, cfg);
    out << "," << outcome_token(outcomes[rec.sample].label) << ","
        << fmt6(rec.max_fluct) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_summary_csv(const std::string& path, const ExperimentConfig& cfg,
                       const std::vector<SweepRow>& rows) {
  std::ofstream out = open_out(path);
  write_echo(out, cfg);
  out << "kind,A,D,omega_mode,samples,plays,mean_total,mean_fairness,"
         "sm_freq,ne_freq,other_freq,mean_max_fluct\n";
  const std::string omega_col = cfg.omega_mode == OmegaMode::Adaptive
                                    ? std::string("auto")
                                    : fmt_num(cfg.omega);
  for (const SweepRow& row : rows) {
    out << fluctuation_kind_token(row.kind) << "," << fmt_num(row.amplitude)
        << "," << cfg.fluct.depth << "," << omega_col << ","
        << row.summary.samples << "," << row.summary.plays << ","
        << fmt6(row.summary.mean_total) << "," << fmt6(row.summary.mean_fairness)
        << "," << fmt6(row.summary.sm_freq) << "," << fmt6(row.summary.ne_freq)
        << "," << fmt6(row.summary.other_freq) << ","
        << fmt6(row.summary.mean_max_fluct) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_regret_csv(const std::string& path, const ExperimentConfig& cfg,
                      const BpResult& result) {
  if (result.arms.empty()) throw std::invalid_argument("no arms to write");
  std::ofstream out = open_out(path);
  write_echo(out, cfg);
  out << "t";
  for (const BpArm& arm : result.arms) out << ",regret_" << arm.name;
  out << "\n";
  for (std::size_t t = 0; t < result.arms.front().mean_regret.size(); ++t) {
    out << (t + 1);
    for (const BpArm& arm : result.arms) out << "," << fmt6(arm.mean_regret[t]);
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

// --- statistics helpers --------------------------------------------------------

std::vector<double> record_totals(const std::vector<RunRecord>& records) {
  std::vector<double> totals(records.size(), 0.0);
  for (std::size_t i = 0; i < records.size(); ++i)
    for (double s : records[i].scores) totals[i] += s;
  return totals;
}

WelchTest welch_t(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t needs two samples of size >= 2");
  auto stats = [](const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size() - 1);
    return std::pair<double, double>(mean, var);
  };
  const auto [ma, va] = stats(a);
  const auto [mb, vb] = stats(b);
  const double sa = va / static_cast<double>(a.size());
  const double sb = vb / static_cast<double>(b.size());
  WelchTest t;
  if (sa + sb == 0.0) {
    t.t = ma == mb ? 0.0 : std::numeric_limits<double>::infinity();
    t.df = static_cast<double>(a.size() + b.size() - 2);
  } else {
    t.t = (ma - mb) / std::sqrt(sa + sb);
    t.df = (sa + sb) * (sa + sb) /
           (sa * sa / static_cast<double>(a.size() - 1) +
            sb * sb / static_cast<double>(b.size() - 1));
  }
  // Two-sided 1% critical value; normal approximation is adequate at the
  // desk-scale sample counts (>= 200) used everywhere this is consulted.
  t.significant_1pct = std::abs(t.t) > 2.5758;
  return t;
}

}  // namespace tow
