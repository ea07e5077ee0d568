#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tow/environment.hpp"
#include "tow/metrics.hpp"
#include "tow/rng.hpp"

namespace tow {

// Standard textbook bandit strategies, used as independent selfish learners.
// The published comparisons mention "modified" variants without defining
// them, so these are the canonical forms and comparisons stay qualitative.
enum class BaselineKind { EpsilonGreedy, Softmax, Ucb1Tuned };

struct BaselineStrategy {
  BaselineKind kind = BaselineKind::EpsilonGreedy;
  double epsilon = 0.1;  // EpsilonGreedy explore probability
  double tau = 0.1;      // Softmax temperature

  // Per-machine running statistics (Welford) and total play count.
  std::vector<long long> count;
  std::vector<double> mean;
  std::vector<double> m2;
  long long total = 0;

  BaselineStrategy(BaselineKind k, std::size_t machines, double eps = 0.1,
                   double temperature = 0.1);
  std::size_t machines() const { return count.size(); }
  double variance(std::size_t k) const;
};

// Next machine to play. The first N plays cover every machine once (in index
// order) so all indices are defined; afterwards the strategy rule applies.
std::size_t baseline_select(const BaselineStrategy& strategy, RngStream& rng);

void baseline_update(BaselineStrategy& strategy, std::size_t played,
                     double reward);

// M independent learners on a shared collision environment: each observes
// only its own (possibly split) reward; there is no coupling between players.
RunRecord selfish_cbp_run(std::vector<BaselineStrategy>& strategies,
                          const MachineSet& env, CollisionPolicy policy,
                          std::size_t plays, std::size_t window, RngStream& rng);

std::string baseline_kind_token(BaselineKind kind);  // egreedy|softmax|ucb1t
BaselineKind parse_baseline_kind(const std::string& token);

}  // namespace tow
