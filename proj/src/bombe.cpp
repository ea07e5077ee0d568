#include "tow/bombe.hpp"

#include <algorithm>
#include <stdexcept>

namespace tow {

BombeState::BombeState(const BombeConfig& cfg)
    : q(cfg.m, cfg.n),
      n(cfg.m, std::vector<long long>(cfg.n, 0)),
      l(cfg.m, std::vector<long long>(cfg.n, 0)),
      r(cfg.m, std::vector<long long>(cfg.n, 0)),
      omega(cfg.m, cfg.omega_mode == OmegaMode::Fixed ? cfg.omega : 1.0) {
  if (cfg.m < 2)
    throw std::invalid_argument("the bombe needs M >= 2 (use the single-player dynamics otherwise)");
  if (cfg.n < 2) throw std::invalid_argument("the bombe needs N >= 2");
  if (cfg.omega_mode == OmegaMode::Fixed && !(cfg.omega >= 0.0))
    throw std::invalid_argument("omega must be >= 0");
  if (cfg.omega_mode == OmegaMode::Adaptive && cfg.m >= cfg.n)
    throw std::invalid_argument("adaptive omega needs M < N (the estimate sums the M-th and (M+1)-th probabilities)");
}

Matrix compute_heights(const Matrix& q) {
  if (q.n < 2) throw std::domain_error("heights need N >= 2");
  Matrix x(q.m, q.n);
  const double inv = 1.0 / static_cast<double>(q.n - 1);
  for (std::size_t i = 0; i < q.m; ++i) {
    const double row = q.row_sum(i);
    for (std::size_t k = 0; k < q.n; ++k)
      x.at(i, k) = q.at(i, k) - (row - q.at(i, k)) * inv;
  }
  return x;
}

std::vector<std::size_t> select_machines(const Matrix& x, const Matrix& osc,
                                         RngStream& rng, int* tie_breaks) {
  if (osc.m != x.m || osc.n != x.n)
    throw std::invalid_argument("height/fluctuation shape mismatch");
  std::vector<std::size_t> selections(x.m);
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < x.m; ++i) {
    tied.clear();
    double best = x.at(i, 0) + osc.at(i, 0);
    tied.push_back(0);
    for (std::size_t k = 1; k < x.n; ++k) {
      const double v = x.at(i, k) + osc.at(i, k);
      if (v > best) {
        best = v;
        tied.assign(1, k);
      } else if (v == best) {
        tied.push_back(k);
      }
    }
    if (tied.size() == 1) {
      selections[i] = tied.front();
    } else {
      selections[i] = tied[rng.pick(tied.size())];
      if (tie_breaks) ++*tie_breaks;
    }
  }
  return selections;
}

Matrix deltas_from_outcome(const std::vector<std::size_t>& selections,
                           const std::vector<double>& rewards,
                           const std::vector<double>& omegas, std::size_t n,
                           DeltaOnSplit mode) {
  const std::size_t m = selections.size();
  if (rewards.size() != m || omegas.size() != m)
    throw std::invalid_argument("selection/reward/omega size mismatch");
  Matrix dq(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (selections[i] >= n) throw std::invalid_argument("machine index out of range");
    if (rewards[i] > 0.0)
      dq.at(i, selections[i]) = mode == DeltaOnSplit::Binary ? 1.0 : rewards[i];
    else
      dq.at(i, selections[i]) = -omegas[i];
  }
  return dq;
}

Matrix apply_coupling(const Matrix& q, const Matrix& dq) {
  if (q.m < 2) throw std::domain_error("coupling needs M >= 2");
  if (dq.m != q.m || dq.n != q.n)
    throw std::invalid_argument("Q/ΔQ shape mismatch");
  Matrix out(q.m, q.n);
  const double inv = 1.0 / static_cast<double>(q.m - 1);
  for (std::size_t k = 0; k < q.n; ++k) {
    const double col = dq.col_sum(k);
    for (std::size_t i = 0; i < q.m; ++i)
      out.at(i, k) = q.at(i, k) + dq.at(i, k) - (col - dq.at(i, k)) * inv;
  }
  return out;
}

// Shared step body: selection and estimate movement given a reward-drawing
// callback (Bernoulli splitting or the EPD table).
template <typename DrawRewards>
static StepOutcome step_impl(BombeState& state, const BombeConfig& cfg,
                             const Matrix& fluct, RngStream& rng,
                             DrawRewards&& draw) {
  if (cfg.omega_mode == OmegaMode::Adaptive)
    for (std::size_t i = 0; i < state.players(); ++i)
      state.omega[i] = adaptive_omega(state.r[i], state.n[i],
                                      state.players(), cfg.estimator);

  StepOutcome out;
  const Matrix x = compute_heights(state.q);
  out.selections = select_machines(x, fluct, rng, &out.tie_breaks);
  out.contenders.assign(state.machines(), 0);
  for (std::size_t k : out.selections) out.contenders[static_cast<std::size_t>(k)]++;
  out.rewards = draw(out.selections, rng);

  const Matrix dq = deltas_from_outcome(out.selections, out.rewards,
                                        state.omega, state.machines(),
                                        cfg.delta_on_split);
  if (cfg.couple) {
    state.q = apply_coupling(state.q, dq);
  } else {
    for (std::size_t i = 0; i < state.q.a.size(); ++i) state.q.a[i] += dq.a[i];
  }

  for (std::size_t i = 0; i < state.players(); ++i) {
    const std::size_t k = out.selections[i];
    state.n[i][k]++;
    if (out.rewards[i] > 0.0) state.r[i][k]++;
    else state.l[i][k]++;
  }
  state.t++;
  return out;
}

StepOutcome bombe_step(BombeState& state, const BombeConfig& cfg,
                       const MachineSet& env, const Matrix& fluct,
                       RngStream& rng) {
  if (env.size() != state.machines())
    throw std::invalid_argument("environment/state machine count mismatch");
  return step_impl(state, cfg, fluct, rng,
                   [&](const std::vector<std::size_t>& sel, RngStream& r) {
                     return draw_round(env, sel, cfg.policy, r);
                   });
}

StepOutcome bombe_step_epd(BombeState& state, const BombeConfig& cfg,
                           const EpdTable& table, const Matrix& fluct,
                           RngStream& rng) {
  if (state.players() != 3 || state.machines() != 5)
    throw std::invalid_argument("the EPD game is 3 players x 5 options");
  return step_impl(state, cfg, fluct, rng,
                   [&](const std::vector<std::size_t>& sel, RngStream& r) {
                     EpdPattern pattern = {static_cast<int>(sel[0]),
                                           static_cast<int>(sel[1]),
                                           static_cast<int>(sel[2])};
                     const auto rewards = epd_draw(table, pattern, r);
                     return std::vector<double>(rewards.begin(), rewards.end());
                   });
}

template <typename StepFn>
static RunRecord episode_impl(const BombeConfig& cfg,
                              const FluctuationSpec& fluct, std::size_t plays,
                              RngStream& rng, StepFn&& step) {
  if (plays < 1) throw std::invalid_argument("plays must be >= 1");
  BombeState state(cfg);
  FluctuationGenerator gen(fluct, cfg.m, cfg.n);

  RunRecord rec;
  rec.scores.assign(cfg.m, 0.0);
  rec.hist.assign(cfg.m, std::vector<long long>(cfg.n, 0));
  rec.window = std::min(cfg.window, plays);
  // Ring buffer of the final `window` selections per player.
  std::vector<std::vector<std::size_t>> recent(cfg.m,
                                               std::vector<std::size_t>(rec.window));
  for (std::size_t t = 0; t < plays; ++t) {
    const Matrix osc = gen.generate(static_cast<long long>(t), rng);
    const StepOutcome out = step(state, osc, rng);
    for (std::size_t i = 0; i < cfg.m; ++i) {
      rec.scores[i] += out.rewards[i];
      rec.hist[i][out.selections[i]]++;
      recent[i][t % rec.window] = out.selections[i];
    }
  }
  rec.window_hist.assign(cfg.m, std::vector<long long>(cfg.n, 0));
  for (std::size_t i = 0; i < cfg.m; ++i)
    for (std::size_t w = 0; w < rec.window; ++w)
      rec.window_hist[i][recent[i][w]]++;
  rec.max_fluct = gen.max_seen();
  return rec;
}

RunRecord run_episode(const BombeConfig& cfg, const MachineSet& env,
                      const FluctuationSpec& fluct, std::size_t plays,
                      RngStream& rng) {
  return episode_impl(cfg, fluct, plays, rng,
                      [&](BombeState& st, const Matrix& osc, RngStream& r) {
                        return bombe_step(st, cfg, env, osc, r);
                      });
}

RunRecord run_epd_episode(const BombeConfig& cfg, const EpdTable& table,
                          const FluctuationSpec& fluct, std::size_t plays,
                          RngStream& rng) {
  return episode_impl(cfg, fluct, plays, rng,
                      [&](BombeState& st, const Matrix& osc, RngStream& r) {
                        return bombe_step_epd(st, cfg, table, osc, r);
                      });
}

}  // namespace tow
