#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tow/environment.hpp"

namespace tow {

// One episode's results. Histograms are per-player selection counts: `hist`
// over the whole episode (rows sum to plays), `window_hist` over the final
// classification window (rows sum to min(window, plays)).
struct RunRecord {
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  std::vector<double> scores;                     // per player
  std::vector<std::vector<long long>> hist;        // M x N
  std::vector<std::vector<long long>> window_hist; // M x N, final window
  std::size_t window = 100;
  double max_fluct = 0.0;
  std::string config_fingerprint;
};

enum class Outcome { SocialMaximum, NashEquilibrium, Other };

struct OutcomeClass {
  Outcome label = Outcome::Other;
  // For SocialMaximum: 1-based index into the lexicographic enumeration of
  // the M! assignments of the top-M machines to players; 0 otherwise.
  int perm_id = 0;
};

std::string outcome_token(Outcome o);  // SM | NE | other

// Mean over unordered player pairs of |score_i - score_j| within one episode.
double fairness(const std::vector<double>& scores);

// Distance between per-player sample-mean scores: mean over unordered player
// pairs of |mean_i - mean_j|, where mean_i averages player i's score across
// records. Detects systematic per-player bias that the within-episode
// fairness cannot (a pattern that always favors player 2 can still have large
// within-episode spread in every sample).
double player_bias(const std::vector<RunRecord>& records);

// Indices of the M machines with the largest reward probabilities (ties
// broken toward the lower index).
std::vector<std::size_t> top_machines(const MachineSet& machines, std::size_t m);

// Modal machine per player over the final window: SM when the modal machines
// are a permutation of the top-M distinct machines, NE when all players sit
// on the single best machine, Other otherwise.
OutcomeClass classify_outcome(const RunRecord& record, const MachineSet& machines,
                              std::size_t m_players);

// EPD variant: SM when the modal pattern's probability total equals the table
// maximum, NE when everyone plays E (mutual defection).
OutcomeClass classify_epd_outcome(const RunRecord& record, const EpdTable& table);

struct Summary {
  std::size_t samples = 0;
  std::size_t plays = 0;
  double mean_total = 0.0;
  double mean_fairness = 0.0;
  double sm_freq = 0.0;
  double ne_freq = 0.0;
  double other_freq = 0.0;
  double mean_max_fluct = 0.0;
  double player_bias = 0.0;
};

// Order-independent means and outcome frequencies. `outcomes` must be
// parallel to `records`.
Summary aggregate(const std::vector<RunRecord>& records,
                  const std::vector<OutcomeClass>& outcomes);

// Score-space reading of the canonical scatter plot: each record is assigned
// to the nearest of the 6 social-maximum centroids (permutations of
// plays * P over the top-M machines) plus the Nash point (plays * P_best / M
// each); returns counts per centroid, SM centroids first (lexicographic
// per-player machine assignment), Nash point last.
std::vector<long long> cluster_report(const std::vector<RunRecord>& records,
                                      const MachineSet& machines,
                                      std::size_t m_players, std::size_t plays);

// Per-step regret of a two-machine run: (P_A - P_B) * N_B(t), t = 1..T.
std::vector<double> regret_curve(const std::vector<std::size_t>& selections,
                                 double pa, double pb);

}  // namespace tow
