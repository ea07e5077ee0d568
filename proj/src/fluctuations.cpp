#include "tow/fluctuations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tow/errors.hpp"

namespace tow {

static long long mod5(long long v) {
  long long r = v % 5;
  return r < 0 ? r + 5 : r;  // mathematical modulo: the phase must cycle
}

Matrix internal_fixed(long long t, double amplitude, std::size_t m,
                      std::size_t n, bool generalized) {
  const bool canonical = (m == 3 && n == 5);
  const bool extended = generalized && m == 3 && n % 5 == 0 && n > 0;
  if (!canonical && !extended)
    throw std::domain_error(
        "internal_fixed is defined for M=3, N=5 (or N a multiple of 5 with "
        "the generalized flag)");

  // Fixed moves O and the published five-case assignment of O-indices to the
  // three players as a function of num = (t + k - 2) mod 5 (1-based k):
  //   num:      0  1  2  3  4
  //   player 1: 0  1  2  3  4
  //   player 2: 3  4  0  1  2   == (num + 3) mod 5
  //   player 3: 1  3  4  2  0   (no affine closed form; table as published)
  const double o[5] = {0.0, amplitude, 0.0, -amplitude, 0.0};
  static const int p3_index[5] = {1, 3, 4, 2, 0};

  Matrix out(m, n);
  for (std::size_t k = 0; k < n; ++k) {
    const long long num = mod5(t + static_cast<long long>(k + 1) - 2);
    out.at(0, k) = o[num];
    out.at(1, k) = o[(num + 3) % 5];
    out.at(2, k) = o[p3_index[num]];
  }
  return out;
}

Matrix internal_random(double amplitude, int depth, std::size_t m,
                       std::size_t n, RngStream& rng) {
  if (m < 2 || n < 2)
    throw std::domain_error("internal_random requires M >= 2 and N >= 2");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");

  // Each repeat: a seed value r at a uniform cell (row-major pick), the rest
  // of its column/row/complement filled so that all sums vanish. The depth
  // average is scaled by the amplitude.
  const double col_coef = -1.0 / static_cast<double>(m - 1);
  const double row_coef = -1.0 / static_cast<double>(n - 1);
  const double rest_coef = 1.0 / static_cast<double>((m - 1) * (n - 1));

  Matrix out(m, n);
  for (int rep = 0; rep < depth; ++rep) {
    const double r = rng.uniform();
    const std::size_t cell = rng.pick(m * n);
    const std::size_t i0 = cell / n;
    const std::size_t k0 = cell % n;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        double c;
        if (i == i0 && k == k0) c = 1.0;
        else if (k == k0) c = col_coef;
        else if (i == i0) c = row_coef;
        else c = rest_coef;
        out.at(i, k) += c * r;
      }
  }
  const double scale = amplitude / static_cast<double>(depth);
  for (double& x : out.a) x *= scale;
  return out;
}

Matrix internal_m_random(double amplitude, int depth, std::size_t m,
                         std::size_t n, RngStream& rng) {
  if (m < 2) throw std::domain_error("internal_m_random requires M >= 2");
  if (n <= m)
    throw std::domain_error(
        "internal_m_random requires N > M (the row fill divides by N - M)");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");

  Matrix out(m, n);
  std::vector<double> r(m);
  std::vector<std::size_t> cols(m);
  std::vector<std::size_t> avail;
  for (int rep = 0; rep < depth; ++rep) {
    // Per-player seed values, then distinct seed columns drawn sequentially
    // from the remaining ones (uniform over all N(N-1)...(N-M+1) arrangements).
    for (std::size_t i = 0; i < m; ++i) r[i] = rng.uniform();
    avail.resize(n);
    for (std::size_t k = 0; k < n; ++k) avail[k] = k;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = rng.pick(avail.size());
      cols[i] = avail[j];
      avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(j));
    }

    std::vector<bool> seeded(n, false);
    for (std::size_t i = 0; i < m; ++i) seeded[cols[i]] = true;
    double r_total = 0.0;
    for (std::size_t i = 0; i < m; ++i) r_total += r[i];

    for (std::size_t i = 0; i < m; ++i) {
      // Seeded columns: own seed r_i, everyone else -r_i/(M-1).
      out.at(i, cols[i]) += r[i];
      for (std::size_t j = 0; j < m; ++j)
        if (j != i) out.at(j, cols[i]) += -r[i] / static_cast<double>(m - 1);
      // Remaining columns of row i balance the row to zero.
      const double others = (r_total - r[i]) / static_cast<double>(m - 1);
      const double fill = -(r[i] - others) / static_cast<double>(n - m);
      for (std::size_t k = 0; k < n; ++k)
        if (!seeded[k]) out.at(i, k) += fill;
    }
  }
  const double scale = amplitude / static_cast<double>(depth);
  for (double& x : out.a) x *= scale;
  return out;
}

Matrix external_oscillation(long long t, double amplitude, std::size_t m,
                            std::size_t n) {
  Matrix out(m, n);
  // The phase is 5-periodic in integer t; reducing mod 5 keeps the sine
  // argument small so the five lattice values stay accurate for any t.
  const long long tm = ((t % 5) + 5) % 5;
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = 2.0 * std::numbers::pi *
                         (static_cast<double>(tm) / 5.0 +
                          static_cast<double>(k) / 5.0);
    const double v = amplitude * std::sin(phase);
    for (std::size_t i = 0; i < m; ++i) out.at(i, k) = v;  // synchronized
  }
  return out;
}

long long m_random_arrangements(std::size_t m, std::size_t n) {
  if (n < m) throw std::domain_error("arrangements require N >= M");
  long long count = 1;
  for (std::size_t i = 0; i < m; ++i) count *= static_cast<long long>(n - i);
  return count;
}

double max_fluctuation(const std::vector<Matrix>& series) {
  if (series.empty())
    throw std::invalid_argument("max_fluctuation needs at least one matrix");
  double v = 0.0;
  for (const Matrix& mat : series) v = std::max(v, mat.max_abs());
  return v;
}

FluctuationGenerator::FluctuationGenerator(const FluctuationSpec& spec,
                                           std::size_t m, std::size_t n)
    : spec_(spec), m_(m), n_(n) {
  if (spec.amplitude < 0.0) throw std::invalid_argument("amplitude must be >= 0");
  // Validate shape constraints once, up front.
  RngStream probe(0, 0);
  generate(0, probe);
  max_seen_ = 0.0;
}

Matrix FluctuationGenerator::generate(long long t, RngStream& rng) {
  Matrix out;
  switch (spec_.kind) {
    case FluctuationKind::None:
      out = Matrix(m_, n_);
      break;
    case FluctuationKind::InternalFixed:
      out = internal_fixed(t, spec_.amplitude, m_, n_, spec_.generalized_fixed);
      break;
    case FluctuationKind::InternalRandom:
      out = internal_random(spec_.amplitude, spec_.depth, m_, n_, rng);
      break;
    case FluctuationKind::InternalMRandom:
      out = internal_m_random(spec_.amplitude, spec_.depth, m_, n_, rng);
      break;
    case FluctuationKind::ExternalOscillation:
      out = external_oscillation(t, spec_.amplitude, m_, n_);
      break;
  }
  max_seen_ = std::max(max_seen_, out.max_abs());
  return out;
}

std::string fluctuation_kind_token(FluctuationKind kind) {
  switch (kind) {
    case FluctuationKind::None: return "none";
    case FluctuationKind::InternalFixed: return "fixed";
    case FluctuationKind::InternalRandom: return "random";
    case FluctuationKind::InternalMRandom: return "m-random";
    case FluctuationKind::ExternalOscillation: return "external";
  }
  return "none";
}

FluctuationKind parse_fluctuation_kind(const std::string& token) {
  if (token == "none") return FluctuationKind::None;
  if (token == "fixed") return FluctuationKind::InternalFixed;
  if (token == "random") return FluctuationKind::InternalRandom;
  if (token == "m-random") return FluctuationKind::InternalMRandom;
  if (token == "external") return FluctuationKind::ExternalOscillation;
  throw std::invalid_argument("unknown fluctuation kind: " + token);
}

}  // namespace tow
