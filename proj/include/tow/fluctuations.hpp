#pragma once

#include <cstddef>
#include <string>

#include "tow/matrix.hpp"
#include "tow/rng.hpp"

namespace tow {

enum class FluctuationKind {
  None,
  InternalFixed,        // deterministic 5-periodic rotation pattern
  InternalRandom,       // depth-averaged random zero-sum sheets
  InternalMRandom,      // per-player seeds in distinct columns
  ExternalOscillation,  // synchronized sine, identical for every player
};

struct FluctuationSpec {
  FluctuationKind kind = FluctuationKind::None;
  double amplitude = 0.0;  // A
  int depth = 10;          // D, used by the random kinds
  // The fixed pattern is defined for M=3, N=5. With this flag it extends to
  // M=3 and any N that is a multiple of 5 (whole O-cycles per row keep all
  // sums zero); no other shape has a conservation-preserving extension.
  bool generalized_fixed = false;

  FluctuationSpec() = default;
  FluctuationSpec(FluctuationKind k, double a, int d = 10)
      : kind(k), amplitude(a), depth(d) {}
};

// All internal kinds return matrices whose every row and column sums to zero
// (fluid-volume conservation); the external kind only conserves row sums.

Matrix internal_fixed(long long t, double amplitude, std::size_t m = 3,
                      std::size_t n = 5, bool generalized = false);

Matrix internal_random(double amplitude, int depth, std::size_t m,
                       std::size_t n, RngStream& rng);

Matrix internal_m_random(double amplitude, int depth, std::size_t m,
                         std::size_t n, RngStream& rng);

Matrix external_oscillation(long long t, double amplitude, std::size_t m,
                            std::size_t n);

// Number of ordered seed-column arrangements available to internal_m_random:
// N(N-1)...(N-M+1).
long long m_random_arrangements(std::size_t m, std::size_t n);

// Largest absolute entry over an episode's generated matrices (the sweep's
// x-coordinate).
double max_fluctuation(const std::vector<Matrix>& series);

// Stateful per-episode generator: dispatches on kind, tracks the running
// maximum absolute entry, and consumes randomness only for the random kinds.
class FluctuationGenerator {
 public:
  FluctuationGenerator(const FluctuationSpec& spec, std::size_t m, std::size_t n);

  Matrix generate(long long t, RngStream& rng);
  double max_seen() const { return max_seen_; }

 private:
  FluctuationSpec spec_;
  std::size_t m_, n_;
  double max_seen_ = 0.0;
};

std::string fluctuation_kind_token(FluctuationKind kind);  // none|fixed|...
FluctuationKind parse_fluctuation_kind(const std::string& token);

}  // namespace tow
