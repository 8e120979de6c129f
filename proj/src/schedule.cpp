// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/schedule.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace skipring {

VisitPlan build_plan(SchemeKind scheme, int n, long long h_max,
                     std::mt19937_64& gen) {
  if (n < 2) throw std::domain_error("plan: need at least two nodes");
  if (h_max <= 0 || h_max % n != 0) {
    throw std::domain_error("plan: h_max must be a positive multiple of n");
  }
  VisitPlan plan;
  plan.scheme = scheme;
  plan.n = n;
  plan.nodes.resize(static_cast<std::size_t>(h_max));
  std::vector<int> round(static_cast<std::size_t>(n));
  std::iota(round.begin(), round.end(), 0);
  for (long long r = 0; r < h_max / n; ++r) {
    if (scheme == SchemeKind::kSkipRandRing) {
      // Fisher-Yates, drawing from the high bits via rejection-free
      // modulo on a 64-bit draw; bias is below 2^-50 for n <= 2^13.
      for (int i = n - 1; i > 0; --i) {
        auto j = static_cast<int>(gen() % static_cast<std::uint64_t>(i + 1));
        std::swap(round[static_cast<std::size_t>(i)],
                  round[static_cast<std::size_t>(j)]);
      }
    }
    for (int i = 0; i < n; ++i) {
      plan.nodes[static_cast<std::size_t>(r * n + i)] =
          round[static_cast<std::size_t>(i)];
    }
  }
  return plan;
}

std::vector<std::vector<double>> transition_matrix(int n, double p) {
  if (n < 2) throw std::domain_error("transition: need at least two nodes");
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("transition: p must lie in (0, 1)");
  }
  // Next update is j = i + 1 + g (mod n) where g ~ Geometric(1-p)
  // truncated to g < n and renormalized over one lap.
  double norm = (1.0 - p) / (1.0 - std::pow(p, n));
  std::vector<std::vector<double>> q(
      static_cast<std::size_t>(n),
      std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int gap = ((j - i - 1) % n + n) % n;
      q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          norm * std::pow(p, gap);
    }
  }
  return q;
}

double lambda1(SchemeKind scheme, int n, double p) {
  if (n < 2) throw std::domain_error("lambda1: need at least two nodes");
  if (scheme == SchemeKind::kSkipRandRing) {
    if (!(p >= 0.0) || !(p < 1.0)) {
      throw std::domain_error("lambda1: p must lie in [0, 1)");
    }
    return 0.0;
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error(
        "lambda1: fixed ring mixes only for p in (0, 1)");
  }
  double c = std::cos(2.0 * 3.141592653589793238462643383279 /
                      static_cast<double>(n));
  return (1.0 - p) / std::sqrt(1.0 + p * p - 2.0 * p * c);
}

double mixing_bound(SchemeKind scheme, int n, double p, long long h) {
  if (h < 0) throw std::domain_error("mixing: h must be >= 0");
  double lam = lambda1(scheme, n, p);
  return std::sqrt(static_cast<double>(n)) *
         std::pow(lam, static_cast<double>(h));
}

}  // namespace skipring
