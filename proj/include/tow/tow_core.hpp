#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tow/rng.hpp"

namespace tow {

enum class OmegaMode { Fixed, Adaptive };

// Reward-probability estimator for the adaptive weighting parameter.
enum class Estimator {
  Direct,   // P̂ = R/N, prior 0.5 for unplayed machines
  Laplace,  // P̂ = (R+1)/(N+2)
};

inline constexpr double kOmegaMax = 10.0;  // clamp for pathological estimates

// Single-player tug-of-war state over two or more machines. In Fixed mode the
// estimate Q_k = N_k - (1+ω)L_k is derived from the integer counts, so the
// closed form holds exactly (no accumulated rounding); Adaptive mode must
// accumulate increments because ω changes between steps.
struct TowState {
  std::vector<long long> n;  // plays per machine
  std::vector<long long> l;  // failures per machine
  std::vector<long long> r;  // rewards per machine (n - l)
  std::vector<double> q_acc; // accumulated estimates (Adaptive mode)
  double omega = 0.0;        // punishment weight used by the next update
  OmegaMode mode = OmegaMode::Fixed;

  TowState(std::size_t machines, OmegaMode m, double omega_value);
  std::size_t machines() const { return n.size(); }
  double q(std::size_t k) const;
};

// Play outcome bookkeeping: +1 on reward, -ω on failure (Q moves, counts up).
TowState tow_update(TowState state, std::size_t played, bool rewarded);

// Two-machine selection: X_A = Q_A - Q_B + δ; A on positive displacement, B on
// negative, fair coin on an exact tie.
std::size_t tow_select(const TowState& state, double delta, RngStream& rng);

// Near-optimal weighting parameter ω₀ = γ/(2-γ), γ ∈ [0, 2).
double omega0(double gamma);

// γ' = P_(M) + P_(M+1): the M-th plus (M+1)-th largest reward probability.
double gamma_prime(const std::vector<double>& probs, std::size_t m_players);

// Direct-substitution estimate of ω₀ from a player's own counts, clamped to
// [0, kOmegaMax]. Unplayed machines fall back to the estimator's prior.
double adaptive_omega(const std::vector<long long>& reward_counts,
                      const std::vector<long long>& play_counts,
                      std::size_t m_players,
                      Estimator est = Estimator::Direct);

// Real-valued-reward variant: Q_k = Σr_k - γ*·N_k with γ* = (μ_A + μ_B)/2.
struct GeneralTowState {
  std::vector<double> reward_sums;
  std::vector<long long> n;
  double gamma_star = 0.0;
  double rbound = 1.0;  // admissible reward interval [0, rbound]

  GeneralTowState(std::size_t machines, double gamma_star_value,
                  double rbound_value = 1.0);
  std::size_t machines() const { return n.size(); }
  double q(std::size_t k) const {
    return reward_sums[k] - gamma_star * static_cast<double>(n[k]);
  }
};

GeneralTowState general_tow_update(GeneralTowState state, std::size_t played,
                                   double reward);

std::size_t general_tow_select(const GeneralTowState& state, double delta,
                               RngStream& rng);

// Strict solvability condition P_B < β/(α+β) < P_A.
bool solvability_check(double alpha, double beta, double pa, double pb);

// The two closed forms of the estimate difference that the tug-of-war
// principle equates: (N_A-N_B) - (1+ω₀)(L_A-L_B) with ω₀ = γ/(2-γ), and
// (N_A-N_B) - (2/(2-γ))(L_A-L_B). Returns both; they agree identically.
std::pair<double, double> tow_principle_gap(long long na, long long nb,
                                            long long la, long long lb,
                                            double gamma);

// Accumulated loss from playing the inferior machine: (P_A - P_B)·E(N_B).
double regret(double pa, double pb, double expected_nb);

}  // namespace tow
