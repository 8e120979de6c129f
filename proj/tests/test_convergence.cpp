// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <skipring/convergence.hpp>
#include <skipring/rng.hpp>
#include <skipring/schedule.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace {

using skipring::ConvergenceParams;

constexpr double kSigmaDefault = 10.5976050537009;

ConvergenceParams base_params() {
  ConvergenceParams c;
  c.d_w = 10.0;
  c.k = 1.0;
  c.d = 8;
  c.sigma = kSigmaDefault;
  c.zeta = 0.03;
  c.n = 10;
  c.p = 0.5;
  c.h_max = 1000;
  c.lambda1 = 0.0;
  return c;
}

// Literal double-loop transcription of the per-hop error term, kept free of
// the closed-form geometric sums and truncations the production code uses.
long double naive_e_h(const ConvergenceParams& c, long long h) {
  long double dw = c.d_w;
  long double k = c.k;
  long double zeta = c.zeta;
  long double sigma = c.sigma;
  long double lam = c.lambda1;
  if (h == 0) return dw * k;
  long double hp1 = static_cast<long double>(h) + 1.0L;
  long double first = (dw * dw +
                       zeta * zeta *
                           (k * k + static_cast<long double>(c.d) * sigma *
                                        sigma)) *
                      (2.0L + std::log(hp1)) / (zeta * std::sqrt(hp1));
  std::vector<long double> pw(static_cast<size_t>(h) + 2);
  pw[0] = 1.0L;
  for (long long i = 1; i <= h + 1; ++i) {
    pw[static_cast<size_t>(i)] = pw[static_cast<size_t>(i - 1)] * lam;
  }
  long double term_a = 0.0L;
  for (long long i = 1; i <= h + 1; ++i) {
    term_a += pw[static_cast<size_t>(i)];
  }
  term_a /= hp1;
  long double term_b = 0.0L;
  for (long long j = 1; j <= h; ++j) {
    long double inner = 0.0L;
    for (long long i = h + 1 - j; i <= h + 1; ++i) {
      inner += pw[static_cast<size_t>(i)];
    }
    term_b += inner / (static_cast<long double>(j) *
                       static_cast<long double>(j + 1));
  }
  long double root_n = std::sqrt(static_cast<long double>(c.n));
  return first + dw * k * root_n * (term_a + term_b);
}

// Full binomial average with exact Pascal-triangle coefficients; only
// feasible for small h_max, which is exactly where it serves as the oracle.
long double naive_error_bound(const ConvergenceParams& c) {
  size_t m = static_cast<size_t>(c.h_max);
  std::vector<long double> binom(m + 1, 0.0L);
  binom[0] = 1.0L;
  for (size_t r = 1; r <= m; ++r) {
    for (size_t k = r; k >= 1; --k) binom[k] += binom[k - 1];
  }
  long double p = c.p;
  long double q = 1.0L - p;
  long double sum = 0.0L;
  for (size_t h = 0; h <= m; ++h) {
    sum += binom[h] * std::pow(q, static_cast<long double>(h)) *
           std::pow(p, static_cast<long double>(m - h)) *
           naive_e_h(c, static_cast<long long>(h));
  }
  return sum;
}

}  // namespace

TEST_SUITE("convergence") {

TEST_CASE("e_h spot values") {
  ConvergenceParams c = base_params();
  CHECK(skipring::e_h(c, 0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(skipring::e_h(c, 3) ==
        doctest::Approx(5689.51218425328).epsilon(1e-9));

  // With no mixing penalty, h > 0 reduces to the first (SGD) term.
  double expect3 = (100.0 + 0.03 * 0.03 *
                                (1.0 + 8.0 * kSigmaDefault * kSigmaDefault)) *
                   (2.0 + std::log(4.0)) / (0.03 * 2.0);
  CHECK(skipring::e_h(c, 3) == doctest::Approx(expect3).epsilon(1e-12));

  ConvergenceParams half = base_params();
  half.lambda1 = 0.5;
  CHECK(skipring::e_h(half, 5) ==
        doctest::Approx(5210.62892504846).epsilon(1e-9));

  ConvergenceParams ring = base_params();
  ring.lambda1 = skipring::lambda1(skipring::SchemeKind::kSkipRing, 10, 0.5);
  CHECK(skipring::e_h(ring, 100) ==
        doctest::Approx(2212.85420968824).epsilon(1e-9));

  CHECK_THROWS_AS(skipring::e_h(c, -1), std::domain_error);
}

TEST_CASE("efficient e_h equals the naive double sum") {
  for (double lam : {0.0, 0.3, 0.75, 0.95}) {
    ConvergenceParams c = base_params();
    c.lambda1 = lam;
    for (long long h = 0; h <= 200; ++h) {
      double naive = static_cast<double>(naive_e_h(c, h));
      CHECK(skipring::e_h(c, h) == doctest::Approx(naive).epsilon(1e-12));
    }
    for (long long h : {500LL, 1000LL, 2000LL}) {
      double naive = static_cast<double>(naive_e_h(c, h));
      CHECK(skipring::e_h(c, h) == doctest::Approx(naive).epsilon(1e-12));
    }
  }
}

TEST_CASE("error bound equals the exact binomial average for small h_max") {
  for (long long h_max : {1LL, 2LL, 10LL, 50LL}) {
    for (double p : {1e-4, 0.5, 0.7}) {
      ConvergenceParams c = base_params();
      c.h_max = h_max;
      c.p = p;
      c.lambda1 = 0.35;
      double exact = static_cast<double>(naive_error_bound(c));
      CHECK(skipring::error_bound(c) ==
            doctest::Approx(exact).epsilon(1e-10));
    }
  }

  ConvergenceParams two = base_params();
  two.h_max = 1;
  two.p = 0.5;
  CHECK(skipring::error_bound(two) ==
        doctest::Approx(3204.59798656241).epsilon(1e-12));
  CHECK(skipring::error_bound(two) ==
        doctest::Approx(0.5 * (skipring::e_h(two, 0) + skipring::e_h(two, 1)))
            .epsilon(1e-12));
}

TEST_CASE("degenerate binomial at p = 0") {
  ConvergenceParams c = base_params();
  c.p = 0.0;
  c.lambda1 = 0.0;
  c.h_max = 1234;
  CHECK(skipring::error_bound(c) ==
        doctest::Approx(skipring::e_h(c, 1234)).epsilon(1e-15));

  // The fixed ring never mixes without skips, so the bound refuses p = 0
  // when a nonzero mixing rate is supplied.
  ConvergenceParams bad = c;
  bad.lambda1 = 0.5;
  CHECK_THROWS_AS(skipring::error_bound(bad), std::domain_error);
  CHECK_THROWS_AS(skipring::e_h(bad, 10), std::domain_error);
}

TEST_CASE("error bound matches a Monte Carlo binomial average") {
  ConvergenceParams c = base_params();
  c.h_max = 10000;
  c.p = 0.5;
  double bound = skipring::error_bound(c);

  skipring::RngStreams streams(314159);
  std::binomial_distribution<long long> binom(c.h_max, 1.0 - c.p);
  std::unordered_map<long long, double> memo;
  constexpr long long kDraws = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (long long i = 0; i < kDraws; ++i) {
    long long h = binom(streams.batch);
    auto it = memo.find(h);
    if (it == memo.end()) it = memo.emplace(h, skipring::e_h(c, h)).first;
    sum += it->second;
    sum_sq += it->second * it->second;
  }
  double mean = sum / kDraws;
  double var = (sum_sq - sum * sum / kDraws) / (kDraws - 1.0);
  double se = std::sqrt(var / kDraws);
  INFO("bound=", bound, " mc=", mean, " se=", se);
  CHECK(std::abs(mean - bound) <= 3.0 * se);
}

TEST_CASE("e_h eventually decreases in h") {
  for (double lam : {0.0, 0.75}) {
    ConvergenceParams c = base_params();
    c.lambda1 = lam;
    double prev = skipring::e_h(c, 10);
    for (long long h = 11; h <= 5000; ++h) {
      double cur = skipring::e_h(c, h);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("error bound shrinks as expected updates grow") {
  // Fixed ring: lambda1 rides along with p.
  struct Cell {
    double p;
    long long h_max;
  };
  const Cell cells[] = {
      {0.7, 1000}, {0.5, 1000}, {0.7, 2000}, {0.5, 2000},
      {0.1, 2000}, {0.5, 4000}, {0.7, 10000}, {0.5, 8000},
  };
  double prev = std::numeric_limits<double>::max();
  for (const Cell& cell : cells) {
    ConvergenceParams c = base_params();
    c.p = cell.p;
    c.h_max = cell.h_max;
    c.lambda1 =
        skipring::lambda1(skipring::SchemeKind::kSkipRing, c.n, cell.p);
    double b = skipring::error_bound(c);
    CHECK(b <= prev);
    prev = b;
  }

  // Permuted scheme: lambda1 pinned at zero.
  prev = std::numeric_limits<double>::max();
  for (const Cell& cell : cells) {
    ConvergenceParams c = base_params();
    c.p = cell.p;
    c.h_max = cell.h_max;
    c.lambda1 = 0.0;
    double b = skipring::error_bound(c);
    CHECK(b <= prev);
    prev = b;
  }
}

TEST_CASE("gaussian sampler moments support the noise-norm lemma") {
  skipring::RngStreams streams(271828);
  skipring::GaussianSampler gauss;
  constexpr int kDim = 8;
  constexpr long long kDraws = 1000000;
  double sum_sq_norm = 0.0;
  double sum_norm = 0.0;
  for (long long i = 0; i < kDraws; ++i) {
    double sq = 0.0;
    for (int j = 0; j < kDim; ++j) {
      double g = gauss(streams.noise);
      sq += g * g;
    }
    sum_sq_norm += sq;
    sum_norm += std::sqrt(sq);
  }
  double mean_sq = sum_sq_norm / kDraws;
  // Var(chi^2_d) = 2d.
  double se = std::sqrt(2.0 * kDim / static_cast<double>(kDraws));
  CHECK(std::abs(mean_sq - kDim) <= 3.0 * se);
  CHECK(sum_norm / kDraws < std::sqrt(static_cast<double>(kDim)));
}

TEST_CASE("asymptotic rate check emits a bounded normalized sequence") {
  ConvergenceParams c = base_params();
  std::vector<long long> grid = {100, 1000, 10000, 100000};
  auto seq = skipring::asymptotic_rate_check(c, grid);
  REQUIRE(seq.size() == grid.size());
  for (size_t i = 0; i < seq.size(); ++i) {
    CHECK(seq[i].first % c.n == 0);
    CHECK(seq[i].second > 0.0);
  }
  // Non-divergence: the tail stays within a factor 2 of the early values.
  double early = seq[seq.size() / 4].second;
  CHECK(seq.back().second <= 2.0 * early);

  // Same order with and without mixing penalty.
  ConvergenceParams ring = base_params();
  ring.lambda1 = 0.75;
  auto seq_ring = skipring::asymptotic_rate_check(ring, grid);
  for (size_t i = 2; i < seq.size(); ++i) {
    double ratio = seq_ring[i].second / seq[i].second;
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 2.0);
  }

  // Larger skip probability worsens the bound at equal h_max.
  ConvergenceParams p7 = base_params();
  p7.p = 0.7;
  auto seq_p7 = skipring::asymptotic_rate_check(p7, grid);
  CHECK(seq_p7.back().second > seq.back().second);
}

TEST_CASE("parameter validation") {
  ConvergenceParams c = base_params();
  c.d_w = 0.0;
  CHECK_THROWS_AS(skipring::error_bound(c), std::domain_error);
  c = base_params();
  c.zeta = -0.1;
  CHECK_THROWS_AS(skipring::error_bound(c), std::domain_error);
  c = base_params();
  c.p = 1.0;
  CHECK_THROWS_AS(skipring::error_bound(c), std::domain_error);
  c = base_params();
  c.lambda1 = 1.0;
  CHECK_THROWS_AS(skipring::error_bound(c), std::domain_error);
  c = base_params();
  c.h_max = 0;
  CHECK_THROWS_AS(skipring::error_bound(c), std::domain_error);
  c = base_params();
  c.sigma = -1.0;
  CHECK_THROWS_AS(skipring::error_bound(c), std::domain_error);
}

}  // TEST_SUITE
