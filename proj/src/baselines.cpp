#include "tow/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tow {

BaselineStrategy::BaselineStrategy(BaselineKind k, std::size_t machines,
                                   double eps, double temperature)
    : kind(k), epsilon(eps), tau(temperature), count(machines, 0),
      mean(machines, 0.0), m2(machines, 0.0) {
  if (machines < 2)
    throw std::invalid_argument("baseline needs at least 2 machines");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must lie in [0,1]");
  if (!(tau > 0.0)) throw std::invalid_argument("temperature must be positive");
}

double BaselineStrategy::variance(std::size_t k) const {
  return count[k] > 1 ? m2[k] / static_cast<double>(count[k]) : 0.0;
}

static std::size_t argmax_with_ties(const std::vector<double>& values,
                                    RngStream& rng) {
  std::vector<std::size_t> tied = {0};
  double best = values[0];
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > best) {
      best = values[k];
      tied.assign(1, k);
    } else if (values[k] == best) {
      tied.push_back(k);
    }
  }
  return tied.size() == 1 ? tied.front() : tied[rng.pick(tied.size())];
}

std::size_t baseline_select(const BaselineStrategy& s, RngStream& rng) {
  const std::size_t n = s.machines();
  if (s.total < static_cast<long long>(n))
    return static_cast<std::size_t>(s.total);  // initialization round

  switch (s.kind) {
    case BaselineKind::EpsilonGreedy: {
      if (rng.uniform() < s.epsilon) return rng.pick(n);
      return argmax_with_ties(s.mean, rng);
    }
    case BaselineKind::Softmax: {
      // Weights exp(mean/τ), max-shifted for stability; one uniform draw
      // walks the cumulative sum in machine order.
      const double top = *std::max_element(s.mean.begin(), s.mean.end());
      std::vector<double> w(n);
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        w[k] = std::exp((s.mean[k] - top) / s.tau);
        sum += w[k];
      }
      double u = rng.uniform() * sum;
      for (std::size_t k = 0; k < n; ++k) {
        u -= w[k];
        if (u < 0.0) return k;
      }
      return n - 1;
    }
    case BaselineKind::Ucb1Tuned: {
      const double lt = std::log(static_cast<double>(s.total));
      std::vector<double> index(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double nk = static_cast<double>(s.count[k]);
        const double v = s.variance(k) + std::sqrt(2.0 * lt / nk);
        index[k] = s.mean[k] + std::sqrt(lt / nk * std::min(0.25, v));
      }
      return argmax_with_ties(index, rng);
    }
  }
  return 0;
}

void baseline_update(BaselineStrategy& s, std::size_t played, double reward) {
  if (played >= s.machines())
    throw std::invalid_argument("machine index out of range");
  s.total++;
  s.count[played]++;
  const double d = reward - s.mean[played];
  s.mean[played] += d / static_cast<double>(s.count[played]);
  s.m2[played] += d * (reward - s.mean[played]);
}

RunRecord selfish_cbp_run(std::vector<BaselineStrategy>& strategies,
                          const MachineSet& env, CollisionPolicy policy,
                          std::size_t plays, std::size_t window,
                          RngStream& rng) {
  if (strategies.empty()) throw std::invalid_argument("no strategies given");
  if (plays < 1) throw std::invalid_argument("plays must be >= 1");
  const std::size_t m = strategies.size();
  const std::size_t n = env.size();
  for (const BaselineStrategy& s : strategies)
    if (s.machines() != n)
      throw std::invalid_argument("strategy/environment machine count mismatch");

  RunRecord rec;
  rec.scores.assign(m, 0.0);
  rec.hist.assign(m, std::vector<long long>(n, 0));
  rec.window = std::min(window, plays);
  std::vector<std::vector<std::size_t>> recent(m,
                                               std::vector<std::size_t>(rec.window));
  std::vector<std::size_t> selections(m);
  for (std::size_t t = 0; t < plays; ++t) {
    for (std::size_t i = 0; i < m; ++i)
      selections[i] = baseline_select(strategies[i], rng);
    const std::vector<double> rewards = draw_round(env, selections, policy, rng);
    for (std::size_t i = 0; i < m; ++i) {
      baseline_update(strategies[i], selections[i], rewards[i]);
      rec.scores[i] += rewards[i];
      rec.hist[i][selections[i]]++;
      recent[i][t % rec.window] = selections[i];
    }
  }
  rec.window_hist.assign(m, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t w = 0; w < rec.window; ++w)
      rec.window_hist[i][recent[i][w]]++;
  return rec;
}

std::string baseline_kind_token(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::EpsilonGreedy: return "egreedy";
    case BaselineKind::Softmax: return "softmax";
    case BaselineKind::Ucb1Tuned: return "ucb1t";
  }
  return "egreedy";
}

BaselineKind parse_baseline_kind(const std::string& token) {
  if (token == "egreedy") return BaselineKind::EpsilonGreedy;
  if (token == "softmax") return BaselineKind::Softmax;
  if (token == "ucb1t") return BaselineKind::Ucb1Tuned;
  throw std::invalid_argument("unknown baseline kind: " + token);
}

}  // namespace tow
