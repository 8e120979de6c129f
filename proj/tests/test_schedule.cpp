// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <skipring/rng.hpp>
#include <skipring/schedule.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace {

using skipring::SchemeKind;
using skipring::VisitPlan;

// Exact visit distribution after h hops from a point mass at `start`,
// evolved by repeated multiplication with Q.
std::vector<double> evolve(const std::vector<std::vector<double>>& q,
                           int start, int h) {
  int n = static_cast<int>(q.size());
  std::vector<double> pi(n, 0.0);
  pi[start] = 1.0;
  std::vector<double> next(n);
  for (int step = 0; step < h; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) next[j] += pi[i] * q[i][j];
    }
    pi.swap(next);
  }
  return pi;
}

double l1_from_uniform(const std::vector<double>& pi) {
  double u = 1.0 / static_cast<double>(pi.size());
  double d = 0.0;
  for (double v : pi) d += std::abs(v - u);
  return d;
}

}  // namespace

TEST_SUITE("schedule") {

TEST_CASE("fixed ring plan repeats the identity round") {
  skipring::RngStreams streams(1);
  VisitPlan plan =
      skipring::build_plan(SchemeKind::kSkipRing, 3, 6, streams.schedule);
  REQUIRE(plan.nodes.size() == 6);
  const int expect[] = {0, 1, 2, 0, 1, 2};
  for (int i = 0; i < 6; ++i) CHECK(plan.nodes[i] == expect[i]);
}

TEST_CASE("plan construction validates arguments") {
  skipring::RngStreams streams(1);
  for (auto scheme : {SchemeKind::kSkipRing, SchemeKind::kSkipRandRing}) {
    CHECK_THROWS_AS(skipring::build_plan(scheme, 1, 4, streams.schedule),
                    std::domain_error);
    CHECK_THROWS_AS(skipring::build_plan(scheme, 3, 7, streams.schedule),
                    std::domain_error);
    CHECK_THROWS_AS(skipring::build_plan(scheme, 3, 0, streams.schedule),
                    std::domain_error);
  }
}

TEST_CASE("random ring blocks are permutations") {
  skipring::RngStreams streams(42);
  const int n = 7;
  const int rounds = 200;
  VisitPlan plan = skipring::build_plan(SchemeKind::kSkipRandRing, n,
                                        n * rounds, streams.schedule);
  REQUIRE(plan.nodes.size() == static_cast<size_t>(n * rounds));
  bool any_shuffled = false;
  for (int r = 0; r < rounds; ++r) {
    std::vector<int> seen(n, 0);
    bool identity = true;
    for (int i = 0; i < n; ++i) {
      int v = plan.nodes[r * n + i];
      REQUIRE(v >= 0);
      REQUIRE(v < n);
      ++seen[v];
      if (v != i) identity = false;
    }
    for (int c : seen) CHECK(c == 1);
    if (!identity) any_shuffled = true;
  }
  CHECK(any_shuffled);
}

TEST_CASE("random ring plans are deterministic per seed") {
  skipring::RngStreams a(99), b(99), c(100);
  VisitPlan pa =
      skipring::build_plan(SchemeKind::kSkipRandRing, 5, 50, a.schedule);
  VisitPlan pb =
      skipring::build_plan(SchemeKind::kSkipRandRing, 5, 50, b.schedule);
  VisitPlan pc =
      skipring::build_plan(SchemeKind::kSkipRandRing, 5, 50, c.schedule);
  CHECK(pa.nodes == pb.nodes);
  CHECK(pa.nodes != pc.nodes);
}

TEST_CASE("random ring positions are uniform over many rounds") {
  skipring::RngStreams streams(7);
  const int n = 10;
  const int rounds = 100000;
  VisitPlan plan = skipring::build_plan(SchemeKind::kSkipRandRing, n,
                                        n * rounds, streams.schedule);
  // counts[v][pos]: how often node v appears at ring position pos.
  std::vector<std::vector<int>> counts(n, std::vector<int>(n, 0));
  for (int r = 0; r < rounds; ++r) {
    for (int i = 0; i < n; ++i) ++counts[plan.nodes[r * n + i]][i];
  }
  for (int v = 0; v < n; ++v) {
    for (int pos = 0; pos < n; ++pos) {
      double freq = static_cast<double>(counts[v][pos]) / rounds;
      CHECK(std::abs(freq - 0.1) < 0.005);
    }
  }
}

TEST_CASE("transition matrix matches the geometric skip law") {
  auto q = skipring::transition_matrix(2, 0.5);
  CHECK(q[0][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(q[0][1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(q[1][0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(q[1][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // Vanishing skip probability degenerates to the next-neighbor shift.
  auto shift = skipring::transition_matrix(4, 1e-9);
  for (int i = 0; i < 4; ++i) {
    CHECK(shift[i][(i + 1) % 4] == doctest::Approx(1.0).epsilon(1e-8));
  }

  for (int n : {2, 3, 10, 17}) {
    for (double p : {0.1, 0.5, 0.9}) {
      auto m = skipring::transition_matrix(n, p);
      REQUIRE(m.size() == static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) {
        double row = 0.0, col = 0.0;
        for (int j = 0; j < n; ++j) {
          CHECK(m[i][j] > 0.0);
          row += m[i][j];
          col += m[j][i];
        }
        CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
        // Circulant, so columns are stochastic too.
        CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }

  CHECK_THROWS_AS(skipring::transition_matrix(1, 0.5), std::domain_error);
  CHECK_THROWS_AS(skipring::transition_matrix(4, 0.0), std::domain_error);
  CHECK_THROWS_AS(skipring::transition_matrix(4, 1.0), std::domain_error);
}

TEST_CASE("eigenvalue moduli match the DFT of the first row") {
  for (int n = 2; n <= 16; ++n) {
    for (double p : {0.1, 0.5, 0.9}) {
      auto q = skipring::transition_matrix(n, p);
      for (int j = 0; j < n; ++j) {
        std::complex<double> lam(0.0, 0.0);
        for (int g = 0; g < n; ++g) {
          double angle = -2.0 * M_PI * j * g / n;
          lam += q[0][g] * std::complex<double>(std::cos(angle),
                                                std::sin(angle));
        }
        double closed =
            (1.0 - p) /
            std::sqrt(1.0 + p * p - 2.0 * p * std::cos(2.0 * M_PI * j / n));
        CHECK(std::abs(std::abs(lam) - closed) < 1e-10);
      }
      CHECK(skipring::lambda1(SchemeKind::kSkipRing, n, p) ==
            doctest::Approx((1.0 - p) /
                            std::sqrt(1.0 + p * p -
                                      2.0 * p * std::cos(2.0 * M_PI / n)))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("lambda1 spot values and domain") {
  CHECK(skipring::lambda1(SchemeKind::kSkipRing, 10, 0.5) ==
        doctest::Approx(0.752937760165).epsilon(1e-11));
  CHECK(skipring::lambda1(SchemeKind::kSkipRing, 2, 0.5) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(skipring::lambda1(SchemeKind::kSkipRing, 10, 1e-4) ==
        doctest::Approx(0.999980898427).epsilon(1e-11));
  CHECK(skipring::lambda1(SchemeKind::kSkipRing, 10, 0.7) ==
        doctest::Approx(0.501832098648).epsilon(1e-11));

  for (double p : {0.0, 0.3, 0.99}) {
    CHECK(skipring::lambda1(SchemeKind::kSkipRandRing, 10, p) == 0.0);
  }

  CHECK_THROWS_AS(skipring::lambda1(SchemeKind::kSkipRing, 10, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(skipring::lambda1(SchemeKind::kSkipRing, 10, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(skipring::lambda1(SchemeKind::kSkipRandRing, 10, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(skipring::lambda1(SchemeKind::kSkipRing, 1, 0.5),
                  std::domain_error);
}

TEST_CASE("mixing bound values and dominance over exact distance") {
  CHECK(skipring::mixing_bound(SchemeKind::kSkipRing, 10, 0.5, 0) ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
  CHECK(skipring::mixing_bound(SchemeKind::kSkipRing, 10, 0.5, 20) ==
        doctest::Approx(0.0108438013983).epsilon(1e-10));
  CHECK(skipring::mixing_bound(SchemeKind::kSkipRing, 10, 0.5, 50) ==
        doctest::Approx(2.17747855958e-6).epsilon(1e-10));
  // The permuted scheme is exactly uniform after any full round.
  CHECK(skipring::mixing_bound(SchemeKind::kSkipRandRing, 10, 0.5, 1) == 0.0);

  for (int n : {2, 5, 10, 16}) {
    for (double p : {0.1, 0.5, 0.9}) {
      auto q = skipring::transition_matrix(n, p);
      double lam = skipring::lambda1(SchemeKind::kSkipRing, n, p);
      for (int start = 0; start < n; ++start) {
        std::vector<double> pi(n, 0.0);
        pi[start] = 1.0;
        std::vector<double> next(n);
        double bound = std::sqrt(static_cast<double>(n));
        for (int h = 1; h <= 200; ++h) {
          std::fill(next.begin(), next.end(), 0.0);
          for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) next[j] += pi[i] * q[i][j];
          }
          pi.swap(next);
          bound *= lam;
          CHECK(l1_from_uniform(pi) <= bound + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("exact distribution converges to uniform") {
  auto q = skipring::transition_matrix(10, 0.5);
  auto pi = evolve(q, 0, 120);
  CHECK(l1_from_uniform(pi) < 1e-12);
}

}  // TEST_SUITE
