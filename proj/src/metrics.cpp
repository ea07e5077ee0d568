#include "tow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace tow {

std::string outcome_token(Outcome o) {
  switch (o) {
    case Outcome::SocialMaximum: return "SM";
    case Outcome::NashEquilibrium: return "NE";
    case Outcome::Other: return "other";
  }
  return "other";
}

double fairness(const std::vector<double>& scores) {
  if (scores.size() < 2)
    throw std::invalid_argument("fairness needs at least two players");
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i)
    for (std::size_t j = i + 1; j < scores.size(); ++j) {
      sum += std::abs(scores[i] - scores[j]);
      ++pairs;
    }
  return sum / static_cast<double>(pairs);
}

double player_bias(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("player_bias needs records");
  const std::size_t m = records.front().scores.size();
  std::vector<double> means(m, 0.0);
  for (const RunRecord& rec : records)
    for (std::size_t i = 0; i < m; ++i) means[i] += rec.scores[i];
  for (double& v : means) v /= static_cast<double>(records.size());
  return fairness(means);
}

std::vector<std::size_t> top_machines(const MachineSet& machines, std::size_t m) {
  if (m < 1 || m > machines.size())
    throw std::invalid_argument("top_machines requires 1 <= M <= N");
  std::vector<std::size_t> order(machines.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return machines.probs[a] > machines.probs[b];
  });
  order.resize(m);
  return order;
}

static std::vector<std::size_t> modal_machines(const RunRecord& record) {
  std::vector<std::size_t> modal(record.window_hist.size());
  for (std::size_t i = 0; i < record.window_hist.size(); ++i) {
    const auto& row = record.window_hist[i];
    modal[i] = static_cast<std::size_t>(
        std::max_element(row.begin(), row.end()) - row.begin());
  }
  return modal;
}

// 1-based rank of `assignment` among the lexicographically ordered
// permutations of the sorted top-machine list.
static int permutation_rank(const std::vector<std::size_t>& assignment) {
  std::vector<std::size_t> sorted = assignment;
  std::sort(sorted.begin(), sorted.end());
  int rank = 1;
  do {
    if (sorted == assignment) return rank;
    ++rank;
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return 0;  // unreachable for a valid permutation
}

OutcomeClass classify_outcome(const RunRecord& record, const MachineSet& machines,
                              std::size_t m_players) {
  if (record.window_hist.size() != m_players)
    throw std::invalid_argument("record/player count mismatch");
  const std::vector<std::size_t> modal = modal_machines(record);
  const std::vector<std::size_t> top = top_machines(machines, m_players);

  const bool all_best = std::all_of(modal.begin(), modal.end(),
                                    [&](std::size_t k) { return k == top[0]; });
  if (all_best && m_players > 1) return {Outcome::NashEquilibrium, 0};

  std::vector<std::size_t> modal_sorted = modal;
  std::sort(modal_sorted.begin(), modal_sorted.end());
  std::vector<std::size_t> top_sorted = top;
  std::sort(top_sorted.begin(), top_sorted.end());
  const bool distinct = std::adjacent_find(modal_sorted.begin(),
                                           modal_sorted.end()) == modal_sorted.end();
  if (distinct && modal_sorted == top_sorted)
    return {Outcome::SocialMaximum, permutation_rank(modal)};
  return {Outcome::Other, 0};
}

OutcomeClass classify_epd_outcome(const RunRecord& record, const EpdTable& table) {
  if (record.window_hist.size() != 3)
    throw std::invalid_argument("EPD records have three players");
  const std::vector<std::size_t> modal = modal_machines(record);
  EpdPattern pattern = {static_cast<int>(modal[0]), static_cast<int>(modal[1]),
                        static_cast<int>(modal[2])};
  if (pattern == EpdPattern{4, 4, 4}) return {Outcome::NashEquilibrium, 0};

  double best_total = 0.0;
  for (const EpdRow& row : table.rows())
    best_total = std::max(best_total,
                          row.probs[0] + row.probs[1] + row.probs[2]);
  const EpdRow& row = table.row(pattern);
  const double total = row.probs[0] + row.probs[1] + row.probs[2];
  if (std::abs(total - best_total) < 1e-9) return {Outcome::SocialMaximum, 0};
  return {Outcome::Other, 0};
}

Summary aggregate(const std::vector<RunRecord>& records,
                  const std::vector<OutcomeClass>& outcomes) {
  if (records.empty()) throw std::invalid_argument("aggregate needs records");
  if (outcomes.size() != records.size())
    throw std::invalid_argument("records/outcomes size mismatch");
  Summary s;
  s.samples = records.size();
  for (std::size_t r = 0; r < records.size(); ++r) {
    const RunRecord& rec = records[r];
    s.mean_total += std::accumulate(rec.scores.begin(), rec.scores.end(), 0.0);
    s.mean_fairness += fairness(rec.scores);
    s.mean_max_fluct += rec.max_fluct;
    switch (outcomes[r].label) {
      case Outcome::SocialMaximum: s.sm_freq += 1.0; break;
      case Outcome::NashEquilibrium: s.ne_freq += 1.0; break;
      case Outcome::Other: s.other_freq += 1.0; break;
    }
  }
  const double n = static_cast<double>(records.size());
  s.mean_total /= n;
  s.mean_fairness /= n;
  s.mean_max_fluct /= n;
  s.sm_freq /= n;
  s.ne_freq /= n;
  s.other_freq /= n;
  s.player_bias = player_bias(records);
  if (!records.front().hist.empty() && !records.front().hist.front().empty()) {
    long long plays = 0;
    for (long long c : records.front().hist.front()) plays += c;
    s.plays = static_cast<std::size_t>(plays);
  }
  return s;
}

std::vector<long long> cluster_report(const std::vector<RunRecord>& records,
                                      const MachineSet& machines,
                                      std::size_t m_players, std::size_t plays) {
  const std::vector<std::size_t> top = top_machines(machines, m_players);

  // SM centroids: every assignment of the top machines to players, ordered
  // lexicographically (matching OutcomeClass::perm_id); then the Nash point.
  std::vector<std::size_t> perm = top;
  std::sort(perm.begin(), perm.end());
  std::vector<std::vector<double>> centroids;
  do {
    std::vector<double> c(m_players);
    for (std::size_t i = 0; i < m_players; ++i)
      c[i] = static_cast<double>(plays) * machines.probs[perm[i]];
    centroids.push_back(std::move(c));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<double> nash(m_players,
                           static_cast<double>(plays) *
                               machines.probs[top[0]] /
                               static_cast<double>(m_players));
  centroids.push_back(std::move(nash));

  std::vector<long long> counts(centroids.size(), 0);
  for (const RunRecord& rec : records) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
      double d = 0.0;
      for (std::size_t i = 0; i < m_players; ++i) {
        const double diff = rec.scores[i] - centroids[c][i];
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    counts[best]++;
  }
  return counts;
}

std::vector<double> regret_curve(const std::vector<std::size_t>& selections,
                                 double pa, double pb) {
  if (!(pa >= pb)) throw std::invalid_argument("regret assumes P_A >= P_B");
  std::vector<double> curve(selections.size());
  long long nb = 0;
  for (std::size_t t = 0; t < selections.size(); ++t) {
    if (selections[t] == 1) ++nb;
    curve[t] = (pa - pb) * static_cast<double>(nb);
  }
  return curve;
}

}  // namespace tow
