#pragma once

#include <cstddef>
#include <vector>

#include "tow/environment.hpp"
#include "tow/fluctuations.hpp"
#include "tow/matrix.hpp"
#include "tow/metrics.hpp"
#include "tow/rng.hpp"
#include "tow/tow_core.hpp"

namespace tow {

// How a rewarded play moves the estimate when rewards can be fractional
// (SplitValue): Binary adds +1 for any positive reward, Proportional adds the
// reward value itself. Identical under SplitProbability (rewards are 0/1).
enum class DeltaOnSplit { Binary, Proportional };

struct BombeConfig {
  std::size_t m = 3;
  std::size_t n = 5;
  OmegaMode omega_mode = OmegaMode::Fixed;
  double omega = 0.08;                 // Fixed-mode value
  Estimator estimator = Estimator::Direct;
  CollisionPolicy policy = CollisionPolicy::SplitProbability;
  DeltaOnSplit delta_on_split = DeltaOnSplit::Binary;
  bool couple = true;   // Eq-style player coupling; off only for reduction tests
  std::size_t window = 100;  // classification window (final plays)
};

// Coupled M-player state. Q rows are a player's estimates across machines;
// from all-zero initialization every machine column of Q sums to zero (the
// coupling redistributes exactly what a player gains), and every row of the
// derived heights X sums to zero identically.
struct BombeState {
  Matrix q;
  long long t = 0;
  std::vector<std::vector<long long>> n, l, r;  // per player x machine counts
  std::vector<double> omega;                    // per-player current ω

  BombeState(const BombeConfig& cfg);
  std::size_t players() const { return q.m; }
  std::size_t machines() const { return q.n; }
};

struct StepOutcome {
  std::vector<std::size_t> selections;  // per player, 0-based machine index
  std::vector<double> rewards;          // per player
  std::vector<int> contenders;          // per machine
  int tie_breaks = 0;                   // players whose argmax was tied
};

// Interface heights: X(i,k) = Q(i,k) - mean of the player's other estimates.
Matrix compute_heights(const Matrix& q);

// Per-player argmax of X + osc; ties uniform over the tied machines. The
// optional counter reports how many players needed a tie-break (used by the
// equivariance tests, which are only exact on tie-free steps).
std::vector<std::size_t> select_machines(const Matrix& x, const Matrix& osc,
                                         RngStream& rng, int* tie_breaks = nullptr);

// ΔQ: +1 (or +reward under Proportional) where a player was rewarded, -ω_i
// where it played and failed, 0 elsewhere.
Matrix deltas_from_outcome(const std::vector<std::size_t>& selections,
                           const std::vector<double>& rewards,
                           const std::vector<double>& omegas, std::size_t n,
                           DeltaOnSplit mode = DeltaOnSplit::Binary);

// Q'(i,k) = Q + ΔQ - (1/(M-1)) Σ_{j≠i} ΔQ(j,k): one player's gain drains the
// others evenly, preserving every column sum.
Matrix apply_coupling(const Matrix& q, const Matrix& dq);

// One full step: heights -> +fluctuation -> select -> draw rewards ->
// ΔQ (with per-player ω from the mode, adaptive ω computed from the
// pre-step counts) -> coupling -> count/t bookkeeping. Randomness order:
// tie-breaks (player order) then reward draws (draw_round order).
StepOutcome bombe_step(BombeState& state, const BombeConfig& cfg,
                       const MachineSet& env, const Matrix& fluct,
                       RngStream& rng);

// EPD variant of a step: 3 players x 5 options, rewards drawn from the
// pattern's table row instead of collision splitting.
StepOutcome bombe_step_epd(BombeState& state, const BombeConfig& cfg,
                           const EpdTable& table, const Matrix& fluct,
                           RngStream& rng);

// Whole-episode drivers. The fluctuation stream and reward stream share one
// RngStream; per-step order is fluctuation first, then the step's draws.
RunRecord run_episode(const BombeConfig& cfg, const MachineSet& env,
                      const FluctuationSpec& fluct, std::size_t plays,
                      RngStream& rng);

RunRecord run_epd_episode(const BombeConfig& cfg, const EpdTable& table,
                          const FluctuationSpec& fluct, std::size_t plays,
                          RngStream& rng);

}  // namespace tow
