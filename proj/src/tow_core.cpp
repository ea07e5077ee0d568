#include "tow/tow_core.hpp"

#include <algorithm>
#include <stdexcept>

namespace tow {

TowState::TowState(std::size_t machines, OmegaMode m, double omega_value)
    : n(machines, 0), l(machines, 0), r(machines, 0), q_acc(machines, 0.0),
      omega(omega_value), mode(m) {
  if (machines < 2) throw std::invalid_argument("TowState needs >= 2 machines");
  if (!(omega >= 0.0)) throw std::invalid_argument("omega must be >= 0");
}

double TowState::q(std::size_t k) const {
  if (mode == OmegaMode::Fixed)
    return static_cast<double>(n[k]) - (1.0 + omega) * static_cast<double>(l[k]);
  return q_acc[k];
}

TowState tow_update(TowState state, std::size_t played, bool rewarded) {
  if (played >= state.machines())
    throw std::invalid_argument("machine index out of range");
  state.n[played]++;
  if (rewarded) {
    state.r[played]++;
    state.q_acc[played] += 1.0;
  } else {
    state.l[played]++;
    state.q_acc[played] -= state.omega;
  }
  return state;
}

static std::size_t select_by_displacement(double x, RngStream& rng) {
  if (x > 0.0) return 0;
  if (x < 0.0) return 1;
  return rng.pick(2);
}

std::size_t tow_select(const TowState& state, double delta, RngStream& rng) {
  if (state.machines() != 2)
    throw std::invalid_argument("tow_select is defined for two machines");
  return select_by_displacement(state.q(0) - state.q(1) + delta, rng);
}

double omega0(double gamma) {
  if (!(gamma >= 0.0 && gamma < 2.0))
    throw std::domain_error("omega0 requires 0 <= gamma < 2");
  return gamma / (2.0 - gamma);
}

double gamma_prime(const std::vector<double>& probs, std::size_t m_players) {
  if (m_players < 1 || m_players >= probs.size())
    throw std::invalid_argument("gamma_prime requires 1 <= M < N");
  std::vector<double> sorted = probs;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  return sorted[m_players - 1] + sorted[m_players];
}

double adaptive_omega(const std::vector<long long>& reward_counts,
                      const std::vector<long long>& play_counts,
                      std::size_t m_players, Estimator est) {
  if (reward_counts.size() != play_counts.size() || play_counts.size() < 2)
    throw std::invalid_argument("adaptive_omega needs matching count vectors, size >= 2");
  std::vector<double> est_probs(play_counts.size());
  for (std::size_t k = 0; k < play_counts.size(); ++k) {
    const double rk = static_cast<double>(reward_counts[k]);
    const double nk = static_cast<double>(play_counts[k]);
    if (est == Estimator::Laplace)
      est_probs[k] = (rk + 1.0) / (nk + 2.0);
    else
      est_probs[k] = play_counts[k] > 0 ? rk / nk : 0.5;
  }
  const double gp = gamma_prime(est_probs, m_players);
  if (gp >= 2.0) return kOmegaMax;  // only reachable through estimates of 1.0
  return std::min(omega0(gp), kOmegaMax);
}

GeneralTowState::GeneralTowState(std::size_t machines, double gamma_star_value,
                                 double rbound_value)
    : reward_sums(machines, 0.0), n(machines, 0), gamma_star(gamma_star_value),
      rbound(rbound_value) {
  if (machines < 2)
    throw std::invalid_argument("GeneralTowState needs >= 2 machines");
  if (!(rbound > 0.0)) throw std::invalid_argument("reward bound must be positive");
}

GeneralTowState general_tow_update(GeneralTowState state, std::size_t played,
                                   double reward) {
  if (played >= state.machines())
    throw std::invalid_argument("machine index out of range");
  if (!(reward >= 0.0 && reward <= state.rbound))
    throw std::invalid_argument("reward outside [0, R]");
  state.reward_sums[played] += reward;
  state.n[played]++;
  return state;
}

std::size_t general_tow_select(const GeneralTowState& state, double delta,
                               RngStream& rng) {
  if (state.machines() != 2)
    throw std::invalid_argument("general_tow_select is defined for two machines");
  return select_by_displacement(state.q(0) - state.q(1) + delta, rng);
}

bool solvability_check(double alpha, double beta, double pa, double pb) {
  if (!(alpha > 0.0 && beta > 0.0))
    throw std::invalid_argument("alpha and beta must be positive");
  if (!(pa > pb)) throw std::invalid_argument("solvability assumes P_A > P_B");
  const double threshold = beta / (alpha + beta);
  return pb < threshold && threshold < pa;
}

std::pair<double, double> tow_principle_gap(long long na, long long nb,
                                            long long la, long long lb,
                                            double gamma) {
  if (la > na || lb > nb)
    throw std::invalid_argument("failure counts exceed play counts");
  if (!(gamma > 0.0 && gamma < 2.0))
    throw std::domain_error("tow_principle_gap requires 0 < gamma < 2");
  const double dn = static_cast<double>(na - nb);
  const double dl = static_cast<double>(la - lb);
  const double dq = dn - (1.0 + omega0(gamma)) * dl;
  const double dqpp = dn - (2.0 / (2.0 - gamma)) * dl;
  return {dq, dqpp};
}

double regret(double pa, double pb, double expected_nb) {
  if (!(pa >= pb)) throw std::invalid_argument("regret assumes P_A >= P_B");
  return (pa - pb) * expected_nb;
}

}  // namespace tow
