#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "tow/errors.hpp"
#include "tow/rng.hpp"

namespace tow {

// Machine indices are 0-based throughout the library; CLI and CSV layers
// render them 1-based (or as letters A.. for five-machine environments).

struct MachineSet {
  std::vector<double> probs;

  explicit MachineSet(std::vector<double> p);
  std::size_t size() const { return probs.size(); }
};

enum class CollisionPolicy {
  SplitProbability,  // each of c contenders draws Bernoulli(P_k / c), reward 0/1
  SplitValue,        // one Bernoulli(P_k) coin, each contender gets 1/c of it
};

// Real-valued rewards on [0, R] with configurable shape; the dynamics only
// depend on mean and the interval bound, so the distribution kind is explicit
// configuration rather than a modeling claim.
enum class RewardDist { UniformOnInterval, TruncatedGaussian };

struct GeneralRewardModel {
  std::vector<double> means;
  std::vector<double> variances;
  double rbound = 1.0;
  RewardDist dist = RewardDist::UniformOnInterval;

  GeneralRewardModel(std::vector<double> mu, std::vector<double> var, double r,
                     RewardDist kind = RewardDist::UniformOnInterval);
  std::size_t size() const { return means.size(); }
};

// --- Bernoulli machine operations -----------------------------------------

// Expected per-player reward under even splitting: player i choosing machine
// k contested by c players expects P_k / c.
std::vector<double> expected_payoff(const MachineSet& machines,
                                    const std::vector<std::size_t>& pattern);

// One round of rewards. SplitProbability consumes one uniform per player (in
// player order); SplitValue consumes one uniform per distinct selected
// machine (in ascending machine order). Both have the same expectation.
std::vector<double> draw_round(const MachineSet& machines,
                               const std::vector<std::size_t>& selections,
                               CollisionPolicy policy, RngStream& rng);

// One reward from a general model machine, always inside [0, rbound].
double draw_general(const GeneralRewardModel& model, std::size_t machine,
                    RngStream& rng);

// --- Extended Prisoner's Dilemma ------------------------------------------

inline constexpr int kEpdChoices = 5;  // options A..E per player
inline constexpr int kEpdPlayers = 3;

using EpdPattern = std::array<int, 3>;  // each entry in [0,5): A=0..E=4

struct EpdRow {
  EpdPattern pattern;
  std::array<int, 3> degrees;   // per-player implication count, 0..3
  std::array<double, 3> probs;  // per-player reward probability level
};

class EpdTable {
 public:
  // Validates: exactly 125 rows, one per pattern, degrees in 0..3, every
  // probability one of the ten named levels. Throws DataError otherwise.
  explicit EpdTable(std::vector<EpdRow> rows);

  const EpdRow& row(const EpdPattern& pattern) const;  // DataError if absent
  const std::vector<EpdRow>& rows() const { return rows_; }

 private:
  std::vector<EpdRow> rows_;  // indexed by 25*c1 + 5*c2 + c3
};

// The ten admissible probability levels (T3..S3) in descending order.
const std::vector<double>& epd_levels();

// Bundled table transcribed from the published supplementary tables.
const EpdTable& builtin_epd_table();

// Reads the 125-row CSV `choice1,choice2,choice3,deg1,deg2,deg3,p1,p2,p3`
// (choices as letters A..E). Throws IoError on unreadable files, DataError on
// malformed or incomplete content.
EpdTable load_epd_table(const std::string& path);

// Stored row for a pattern: (degrees, probabilities).
std::pair<std::array<int, 3>, std::array<double, 3>> epd_payoff(
    const EpdTable& table, const EpdPattern& pattern);

// Independent cross-check of table degrees from the choice semantics:
// A implicates nobody; B the chooser; C the next player (circular); D the
// third player (circular); E both others.
std::array<int, 3> epd_degrees_oracle(const EpdPattern& pattern);

// One round of EPD rewards: player i draws Bernoulli(row.probs[i]), in player
// order (consumes exactly 3 uniforms).
std::array<double, 3> epd_draw(const EpdTable& table, const EpdPattern& pattern,
                               RngStream& rng);

char epd_choice_letter(int choice);
int epd_choice_index(char letter);  // throws DataError on non-A..E input

}  // namespace tow
