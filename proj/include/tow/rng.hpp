#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace tow {

// Deterministic per-sample random streams.
//
// Stream identity (pinned so ports can reproduce byte-identical outputs):
//   state  = mt19937_64 seeded with splitmix64(master ^ (id + 1) * 0x9E3779B97F4A7C15)
//   uniform double in [0,1) = (next() >> 11) * 2^-53
//   pick(n) = bitmask rejection on the low bits of next()
//   bernoulli(p) = uniform() < p
// mt19937_64's output sequence for a given 64-bit seed is fixed by the C++
// standard, so the streams are identical across platforms and compilers.
// std::uniform_*_distribution are deliberately avoided: their draw algorithms
// are implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 64-bit sub-seed for stream `stream_id` of a master seed; also what the
// records CSV reports in its seed column.
inline std::uint64_t stream_seed(std::uint64_t master_seed,
                                 std::uint64_t stream_id) {
  return splitmix64(master_seed ^ (stream_id + 1) * 0x9E3779B97F4A7C15ULL);
}

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : gen_(stream_seed(master_seed, stream_id)) {}

  std::uint64_t next() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n), n >= 1. Bitmask rejection: unbiased and
  // reproducible (consumes a variable but deterministic number of draws).
  std::size_t pick(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t mask =
        ~0ULL >> (64 - std::bit_width(static_cast<std::uint64_t>(n - 1)));
    for (;;) {
      std::uint64_t v = next() & mask;
      if (v < n) return static_cast<std::size_t>(v);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tow
