#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "tow/fluctuations.hpp"
#include "tow/rng.hpp"
#include "tow/verify.hpp"

using namespace tow;

namespace {

void check_all_sums_zero(const Matrix& mat, double tol = 1e-12) {
  for (std::size_t i = 0; i < mat.m; ++i)
    CHECK(std::abs(mat.row_sum(i)) <= tol);
  for (std::size_t k = 0; k < mat.n; ++k)
    CHECK(std::abs(mat.col_sum(k)) <= tol);
}

}  // namespace

TEST_CASE("fixed rotation: published columns at t=0") {
  const double a = 2.0;
  const Matrix f = internal_fixed(0, a);
  REQUIRE(f.m == 3);
  REQUIRE(f.n == 5);

  // Machine 1 (phase index 4): all three players flat.
  CHECK(f.at(0, 0) == 0.0);
  CHECK(f.at(1, 0) == 0.0);
  CHECK(f.at(2, 0) == 0.0);
  // Machine 2: players get (0, -A, +A).
  CHECK(f.at(0, 1) == 0.0);
  CHECK(f.at(1, 1) == -a);
  CHECK(f.at(2, 1) == a);
  // Machine 3: players get (+A, 0, -A).
  CHECK(f.at(0, 2) == a);
  CHECK(f.at(1, 2) == 0.0);
  CHECK(f.at(2, 2) == -a);
  // Machine 4: all flat.
  CHECK(f.at(0, 3) == 0.0);
  CHECK(f.at(1, 3) == 0.0);
  CHECK(f.at(2, 3) == 0.0);
  // Machine 5: (-A, +A, 0).
  CHECK(f.at(0, 4) == -a);
  CHECK(f.at(1, 4) == a);
  CHECK(f.at(2, 4) == 0.0);
}

TEST_CASE("fixed rotation: all five phase cases") {
  // At t=1 the phase index of column k (0-based) is exactly k, which walks
  // the whole assignment table:
  //   phase:    0   1   2   3   4
  //   player 1: 0   A   0  -A   0     (the base move profile)
  //   player 2: -A  0   0   A   0     (base shifted by 3)
  //   player 3: A  -A   0   0   0     (the published third assignment)
  const Matrix f = internal_fixed(1, 1.0);
  const double p1[5] = {0, 1, 0, -1, 0};
  const double p2[5] = {-1, 0, 0, 1, 0};
  const double p3[5] = {1, -1, 0, 0, 0};
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(f.at(0, k) == p1[k]);
    CHECK(f.at(1, k) == p2[k]);
    CHECK(f.at(2, k) == p3[k]);
  }
}

TEST_CASE("fixed rotation: conservation, periodicity, negative time") {
  for (long long t = 0; t < 12; ++t) {
    const Matrix f = internal_fixed(t, 1.5);
    check_all_sums_zero(f, 0.0);  // integer multiples of A: exact
    CHECK(f.max_abs() == 1.5);

    const Matrix g = internal_fixed(t + 5, 1.5);
    for (std::size_t i = 0; i < f.a.size(); ++i) CHECK(f.a[i] == g.a[i]);
  }
  // Mathematical modulo: t=-1 matches t=4.
  const Matrix neg = internal_fixed(-1, 1.0);
  const Matrix pos = internal_fixed(4, 1.0);
  for (std::size_t i = 0; i < neg.a.size(); ++i) CHECK(neg.a[i] == pos.a[i]);
}

TEST_CASE("fixed rotation: shape domain") {
  CHECK_THROWS_AS(internal_fixed(0, 1.0, 2, 5), std::domain_error);
  CHECK_THROWS_AS(internal_fixed(0, 1.0, 3, 4), std::domain_error);
  CHECK_THROWS_AS(internal_fixed(0, 1.0, 3, 10), std::domain_error);

  // Generalized: whole cycles per row keep the sums zero.
  const Matrix wide = internal_fixed(3, 1.0, 3, 10, true);
  check_all_sums_zero(wide, 0.0);
  CHECK_THROWS_AS(internal_fixed(0, 1.0, 3, 7, true), std::domain_error);
  CHECK_THROWS_AS(internal_fixed(0, 1.0, 4, 5, true), std::domain_error);
}

TEST_CASE("random sheets: single-sheet anatomy via shadow replay") {
  RngStream rng(21, 0);
  RngStream shadow = rng;
  const Matrix f = internal_random(1.0, 1, 3, 5, rng);

  const double r = shadow.uniform();
  const std::size_t cell = shadow.pick(15);
  const std::size_t i0 = cell / 5, k0 = cell % 5;

  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 5; ++k) {
      double expect;
      if (i == i0 && k == k0) expect = r;
      else if (k == k0) expect = -r / 2.0;       // seed column
      else if (i == i0) expect = -r / 4.0;       // seed row
      else expect = r / 8.0;                     // complement
      CHECK(f.at(i, k) == doctest::Approx(expect).epsilon(1e-15));
    }
  check_all_sums_zero(f);
}

TEST_CASE("random sheets: conservation and amplitude linearity") {
  RngStream rng(22, 0);
  for (int rep = 0; rep < 50; ++rep)
    check_all_sums_zero(internal_random(3.0, 10, 4, 6, rng));

  RngStream r1(23, 0), r2(23, 0);
  const Matrix half = internal_random(2.0, 7, 3, 5, r1);
  const Matrix full = internal_random(4.0, 7, 3, 5, r2);
  for (std::size_t i = 0; i < half.a.size(); ++i)
    CHECK(full.a[i] == doctest::Approx(2.0 * half.a[i]).epsilon(1e-15));
}

TEST_CASE("random sheets: per-cell mean zero and closed-form variance") {
  const double a = 2.0;
  const int depth = 10;
  const int samples = 20000;
  std::vector<double> sum(15, 0.0), sumsq(15, 0.0);
  RngStream rng(24, 0);
  for (int s = 0; s < samples; ++s) {
    const Matrix f = internal_random(a, depth, 3, 5, rng);
    for (std::size_t c = 0; c < 15; ++c) {
      sum[c] += f.a[c];
      sumsq[c] += f.a[c] * f.a[c];
    }
  }
  // Depth-averaged sheets: Var = (A^2/D) * (1/3) / ((M-1)(N-1)).
  const double var_expected = (a * a / depth) / 3.0 / 8.0;
  const double mean_sigma = std::sqrt(var_expected / samples);
  for (std::size_t c = 0; c < 15; ++c) {
    const double mean = sum[c] / samples;
    const double var = sumsq[c] / samples - mean * mean;
    CHECK(std::abs(mean) < 4 * mean_sigma);
    CHECK(var == doctest::Approx(var_expected).epsilon(0.10));
  }
}

TEST_CASE("random sheets: argument validation") {
  RngStream rng(25, 0);
  CHECK_THROWS_AS(internal_random(1.0, 0, 3, 5, rng), std::invalid_argument);
  CHECK_THROWS_AS(internal_random(1.0, 5, 1, 5, rng), std::domain_error);
  CHECK_THROWS_AS(internal_random(1.0, 5, 3, 1, rng), std::domain_error);
}

TEST_CASE("per-player seeded sheets: anatomy via shadow replay") {
  RngStream rng(26, 0);
  RngStream shadow = rng;
  const Matrix f = internal_m_random(1.0, 1, 3, 5, rng);

  double r[3];
  for (int i = 0; i < 3; ++i) r[i] = shadow.uniform();
  std::vector<std::size_t> avail = {0, 1, 2, 3, 4};
  std::size_t cols[3];
  for (int i = 0; i < 3; ++i) {
    const std::size_t j = shadow.pick(avail.size());
    cols[i] = avail[j];
    avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(j));
  }
  const double r_total = r[0] + r[1] + r[2];

  for (int i = 0; i < 3; ++i) {
    CHECK(f.at(i, cols[i]) == doctest::Approx(r[i]).epsilon(1e-15));
    for (int j = 0; j < 3; ++j)
      if (j != i)
        CHECK(f.at(j, cols[i]) == doctest::Approx(-r[i] / 2.0).epsilon(1e-15));
    const double others = (r_total - r[i]) / 2.0;
    const double fill = -(r[i] - others) / 2.0;  // two unseeded columns
    for (std::size_t k : avail)
      CHECK(f.at(i, k) == doctest::Approx(fill).epsilon(1e-15));
  }
  check_all_sums_zero(f);
}

TEST_CASE("per-player seeded sheets: conservation, mean zero, shape domain") {
  RngStream rng(27, 0);
  for (int rep = 0; rep < 50; ++rep)
    check_all_sums_zero(internal_m_random(4.0, 10, 3, 7, rng));

  std::vector<double> sum(15, 0.0);
  const int samples = 20000;
  for (int s = 0; s < samples; ++s) {
    const Matrix f = internal_m_random(2.0, 10, 3, 5, rng);
    for (std::size_t c = 0; c < 15; ++c) sum[c] += f.a[c];
  }
  for (std::size_t c = 0; c < 15; ++c)
    CHECK(std::abs(sum[c] / samples) < 0.02);

  CHECK_THROWS_AS(internal_m_random(1.0, 1, 3, 3, rng), std::domain_error);
  CHECK_THROWS_AS(internal_m_random(1.0, 1, 4, 3, rng), std::domain_error);
  CHECK_THROWS_AS(internal_m_random(1.0, 1, 1, 5, rng), std::domain_error);
  CHECK_THROWS_AS(internal_m_random(1.0, 0, 3, 5, rng), std::invalid_argument);

  CHECK(m_random_arrangements(3, 5) == 60);
  CHECK(m_random_arrangements(2, 2) == 2);
  CHECK_THROWS_AS(m_random_arrangements(4, 3), std::domain_error);
}

TEST_CASE("synchronized oscillation") {
  const double a = 2.0;
  const Matrix f = external_oscillation(0, a, 3, 5);

  SUBCASE("identical rows, sine lattice values") {
    for (std::size_t k = 0; k < 5; ++k) {
      const double expect = a * std::sin(2.0 * std::numbers::pi * k / 5.0);
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(f.at(i, k) == doctest::Approx(expect).epsilon(1e-15));
      CHECK(f.col_sum(k) == doctest::Approx(3.0 * expect).epsilon(1e-15));
    }
    CHECK(f.at(0, 0) == 0.0);
    CHECK(f.max_abs() ==
          doctest::Approx(a * std::sin(2.0 * std::numbers::pi / 5.0)));
  }
  SUBCASE("row sums vanish over a whole period") {
    for (long long t = -3; t < 12; ++t) {
      const Matrix g = external_oscillation(t, a, 3, 5);
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::abs(g.row_sum(i)) < 1e-14);
    }
  }
  SUBCASE("5-periodic, exactly, at any distance") {
    const Matrix far = external_oscillation(1000000000, a, 3, 5);
    const Matrix near = external_oscillation(0, a, 3, 5);
    for (std::size_t i = 0; i < far.a.size(); ++i)
      CHECK(far.a[i] == near.a[i]);
    const Matrix neg = external_oscillation(-2, a, 3, 5);
    const Matrix pos = external_oscillation(3, a, 3, 5);
    for (std::size_t i = 0; i < neg.a.size(); ++i)
      CHECK(neg.a[i] == pos.a[i]);
  }
}

TEST_CASE("series maximum") {
  Matrix a(2, 2), b(2, 2);
  a.at(0, 1) = -3.0;
  b.at(1, 0) = 2.5;
  CHECK(max_fluctuation({a, b}) == 3.0);
  CHECK_THROWS_AS(max_fluctuation({}), std::invalid_argument);
}

TEST_CASE("episode generator: dispatch, bookkeeping, validation") {
  SUBCASE("no-fluctuation kind returns zeros and consumes nothing") {
    FluctuationGenerator gen(FluctuationSpec{}, 3, 5);
    RngStream rng(28, 0);
    RngStream shadow = rng;
    const Matrix f = gen.generate(0, rng);
    CHECK(f.max_abs() == 0.0);
    CHECK(gen.max_seen() == 0.0);
    CHECK(rng.next() == shadow.next());
  }
  SUBCASE("deterministic kinds match the free functions") {
    FluctuationGenerator gen(
        FluctuationSpec(FluctuationKind::InternalFixed, 1.25), 3, 5);
    RngStream rng(29, 0);
    const Matrix f = gen.generate(7, rng);
    const Matrix expect = internal_fixed(7, 1.25);
    for (std::size_t i = 0; i < f.a.size(); ++i) CHECK(f.a[i] == expect.a[i]);
    CHECK(gen.max_seen() == 1.25);
  }
  SUBCASE("random kind consumes the caller's stream") {
    FluctuationGenerator gen(
        FluctuationSpec(FluctuationKind::InternalRandom, 2.0, 10), 3, 5);
    RngStream rng(30, 0);
    RngStream shadow = rng;
    const Matrix f = gen.generate(0, rng);
    const Matrix expect = internal_random(2.0, 10, 3, 5, shadow);
    for (std::size_t i = 0; i < f.a.size(); ++i) CHECK(f.a[i] == expect.a[i]);
    CHECK(gen.max_seen() == f.max_abs());
  }
  SUBCASE("running maximum accumulates") {
    FluctuationGenerator gen(
        FluctuationSpec(FluctuationKind::ExternalOscillation, 2.0), 3, 5);
    RngStream rng(31, 0);
    gen.generate(0, rng);
    const double first = gen.max_seen();
    gen.generate(2, rng);
    CHECK(gen.max_seen() >= first);
    CHECK(gen.max_seen() ==
          doctest::Approx(2.0 * std::sin(2.0 * std::numbers::pi / 5.0)));
  }
  SUBCASE("construction validates shape and amplitude up front") {
    CHECK_THROWS_AS(FluctuationGenerator(
                        FluctuationSpec(FluctuationKind::InternalFixed, -1.0),
                        3, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(FluctuationGenerator(
                        FluctuationSpec(FluctuationKind::InternalMRandom, 1.0),
                        3, 3),
                    std::domain_error);
    CHECK_THROWS_AS(FluctuationGenerator(
                        FluctuationSpec(FluctuationKind::InternalFixed, 1.0),
                        4, 5),
                    std::domain_error);
  }
}

TEST_CASE("matrix-level conservation checker") {
  const std::vector<CheckResult> checks =
      verify_fluctuation_conservation(200, 1e-12, 3);
  CHECK(checks.size() == 4);
  for (const CheckResult& c : checks) {
    INFO(c.name, ": ", c.detail);
    CHECK(c.pass);
    CHECK(c.worst < 1e-12);
  }
}

TEST_CASE("kind tokens round-trip") {
  using K = FluctuationKind;
  for (K k : {K::None, K::InternalFixed, K::InternalRandom, K::InternalMRandom,
              K::ExternalOscillation})
    CHECK(parse_fluctuation_kind(fluctuation_kind_token(k)) == k);
  CHECK_THROWS_AS(parse_fluctuation_kind("sine"), std::invalid_argument);
}
