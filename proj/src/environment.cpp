#include "tow/environment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tow {

MachineSet::MachineSet(std::vector<double> p) : probs(std::move(p)) {
  if (probs.size() < 2)
    throw std::invalid_argument("MachineSet needs at least 2 machines");
  for (double q : probs)
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument("machine probability outside [0,1]");
}

GeneralRewardModel::GeneralRewardModel(std::vector<double> mu,
                                       std::vector<double> var, double r,
                                       RewardDist kind)
    : means(std::move(mu)), variances(std::move(var)), rbound(r), dist(kind) {
  if (means.size() < 2 || variances.size() != means.size())
    throw std::invalid_argument("GeneralRewardModel needs matching mean/variance lists, size >= 2");
  if (!(rbound > 0.0)) throw std::invalid_argument("reward bound must be positive");
  for (double m : means)
    if (!(m >= 0.0 && m <= rbound))
      throw std::invalid_argument("machine mean outside [0, R]");
  for (double v : variances)
    if (!(v >= 0.0)) throw std::invalid_argument("negative variance");
}

static void check_pattern(std::size_t n_machines,
                          const std::vector<std::size_t>& pattern) {
  if (pattern.empty()) throw std::invalid_argument("empty selection pattern");
  for (std::size_t k : pattern)
    if (k >= n_machines) throw std::invalid_argument("machine index out of range");
}

std::vector<double> expected_payoff(const MachineSet& machines,
                                    const std::vector<std::size_t>& pattern) {
  check_pattern(machines.size(), pattern);
  std::vector<int> contenders(machines.size(), 0);
  for (std::size_t k : pattern) contenders[k]++;
  std::vector<double> out(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i)
    out[i] = machines.probs[pattern[i]] / contenders[pattern[i]];
  return out;
}

std::vector<double> draw_round(const MachineSet& machines,
                               const std::vector<std::size_t>& selections,
                               CollisionPolicy policy, RngStream& rng) {
  check_pattern(machines.size(), selections);
  std::vector<int> contenders(machines.size(), 0);
  for (std::size_t k : selections) contenders[k]++;

  std::vector<double> rewards(selections.size(), 0.0);
  if (policy == CollisionPolicy::SplitProbability) {
    for (std::size_t i = 0; i < selections.size(); ++i) {
      std::size_t k = selections[i];
      if (rng.bernoulli(machines.probs[k] / contenders[k])) rewards[i] = 1.0;
    }
  } else {
    std::vector<double> share(machines.size(), 0.0);
    for (std::size_t k = 0; k < machines.size(); ++k)
      if (contenders[k] > 0 && rng.bernoulli(machines.probs[k]))
        share[k] = 1.0 / contenders[k];
    for (std::size_t i = 0; i < selections.size(); ++i)
      rewards[i] = share[selections[i]];
  }
  return rewards;
}

double draw_general(const GeneralRewardModel& model, std::size_t machine,
                    RngStream& rng) {
  if (machine >= model.size())
    throw std::invalid_argument("machine index out of range");
  const double mu = model.means[machine];
  const double sd = std::sqrt(model.variances[machine]);
  if (model.dist == RewardDist::UniformOnInterval) {
    // Uniform with the requested mean and variance has half-width sqrt(3)*sd;
    // endpoints are clamped into [0, R] so the support invariant always holds.
    const double w = std::sqrt(3.0) * sd;
    const double lo = std::max(0.0, mu - w);
    const double hi = std::min(model.rbound, mu + w);
    return rng.uniform(lo, hi);
  }
  // Truncated Gaussian by rejection; Box-Muller with a pinned draw pattern
  // (two uniforms per candidate) keeps the stream reproducible.
  for (;;) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double z = std::sqrt(-2.0 * std::log1p(-u1)) *
                     std::cos(2.0 * std::acos(-1.0) * u2);
    const double r = mu + sd * z;
    if (r >= 0.0 && r <= model.rbound) return r;
  }
}

// --- EPD --------------------------------------------------------------------

static std::size_t epd_index(const EpdPattern& p) {
  for (int c : p)
    if (c < 0 || c >= kEpdChoices)
      throw std::invalid_argument("EPD choice outside A..E");
  return static_cast<std::size_t>(25 * p[0] + 5 * p[1] + p[2]);
}

const std::vector<double>& epd_levels() {
  static const std::vector<double> levels = {0.79, 0.76, 0.73, 0.70, 0.60,
                                             0.55, 0.50, 0.40, 0.30, 0.20};
  return levels;
}

EpdTable::EpdTable(std::vector<EpdRow> rows) {
  if (rows.size() != 125)
    throw DataError("EPD table must have exactly 125 rows, got " +
                    std::to_string(rows.size()));
  rows_.resize(125);
  std::vector<bool> seen(125, false);
  for (const EpdRow& r : rows) {
    std::size_t idx = epd_index(r.pattern);
    if (seen[idx]) throw DataError("duplicate EPD pattern row");
    seen[idx] = true;
    for (int d : r.degrees)
      if (d < 0 || d > 3) throw DataError("EPD degree outside 0..3");
    for (double p : r.probs) {
      const auto& lv = epd_levels();
      if (std::none_of(lv.begin(), lv.end(),
                       [p](double l) { return std::abs(l - p) < 1e-9; }))
        throw DataError("EPD probability is not one of the named levels");
    }
    rows_[idx] = r;
  }
}

const EpdRow& EpdTable::row(const EpdPattern& pattern) const {
  return rows_[epd_index(pattern)];  // the ctor guarantees completeness
}

char epd_choice_letter(int choice) {
  if (choice < 0 || choice >= kEpdChoices)
    throw std::invalid_argument("EPD choice outside A..E");
  return static_cast<char>('A' + choice);
}

int epd_choice_index(char letter) {
  if (letter >= 'a' && letter <= 'e') letter = static_cast<char>(letter - 'a' + 'A');
  if (letter < 'A' || letter > 'E')
    throw DataError(std::string("EPD choice letter must be A..E, got '") +
                    letter + "'");
  return letter - 'A';
}

EpdTable load_epd_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open EPD table file: " + path);
  std::vector<EpdRow> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": expected 9 comma-separated fields");
    EpdRow r{};
    try {
      for (int i = 0; i < 3; ++i) {
        std::string f = fields[i];
        f.erase(std::remove_if(f.begin(), f.end(),
                               [](unsigned char c) { return std::isspace(c); }),
                f.end());
        if (f.size() != 1) throw DataError("choice field must be one letter");
        r.pattern[i] = epd_choice_index(f[0]);
      }
      for (int i = 0; i < 3; ++i) r.degrees[i] = std::stoi(fields[3 + i]);
      for (int i = 0; i < 3; ++i) r.probs[i] = std::stod(fields[6 + i]);
    } catch (const std::exception& e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    rows.push_back(r);
  }
  return EpdTable(std::move(rows));  // completeness checked by the ctor
}

std::pair<std::array<int, 3>, std::array<double, 3>> epd_payoff(
    const EpdTable& table, const EpdPattern& pattern) {
  const EpdRow& r = table.row(pattern);
  return {r.degrees, r.probs};
}

std::array<int, 3> epd_degrees_oracle(const EpdPattern& pattern) {
  epd_index(pattern);  // validate
  std::array<int, 3> deg = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    switch (pattern[i]) {
      case 0: break;                  // A: nobody
      case 1: deg[i]++; break;        // B: self
      case 2: deg[(i + 1) % 3]++; break;  // C: next player
      case 3: deg[(i + 2) % 3]++; break;  // D: third player
      case 4:                          // E: both others
        deg[(i + 1) % 3]++;
        deg[(i + 2) % 3]++;
        break;
    }
  }
  return deg;
}

std::array<double, 3> epd_draw(const EpdTable& table, const EpdPattern& pattern,
                               RngStream& rng) {
  const EpdRow& r = table.row(pattern);
  std::array<double, 3> rewards{};
  for (int i = 0; i < 3; ++i) rewards[i] = rng.bernoulli(r.probs[i]) ? 1.0 : 0.0;
  return rewards;
}

}  // namespace tow
