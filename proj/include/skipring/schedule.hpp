// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace skipring {

enum class SchemeKind { kSkipRing, kSkipRandRing };

// Order in which the token visits nodes. For kSkipRing the order is the
// fixed cyclic order 0, 1, ..., n-1 repeated; for kSkipRandRing each round
// of n hops uses a fresh uniform permutation.
struct VisitPlan {
  SchemeKind scheme = SchemeKind::kSkipRing;
  int n = 0;
  std::vector<int> nodes;  // length h_max, 0-based node ids
};

// h_max must be a positive multiple of n so every round is complete.
VisitPlan build_plan(SchemeKind scheme, int n, long long h_max,
                     std::mt19937_64& gen);

// Row-stochastic matrix of the updating-node Markov chain on the fixed
// ring: entry (i, j) is the probability that the next update after one at
// node i happens at node j, when each hop independently skips with
// probability p. Requires n >= 2 and p in [0, 1).
std::vector<std::vector<double>> transition_matrix(int n, double p);

// Modulus of the second-largest-in-modulus eigenvalue of the transition
// matrix: (1 - p) / sqrt(1 + p^2 - 2 p cos(2 pi / n)). Governs how fast the
// update location forgets its start. Zero for kSkipRandRing (each round is
// an independent permutation). For kSkipRing, p = 0 is a domain error: the
// chain is a deterministic cycle and never mixes.
double lambda1(SchemeKind scheme, int n, double p);

// sqrt(n) * lambda1^h, an upper bound on the total-variation distance to
// the uniform distribution after h updates.
double mixing_bound(SchemeKind scheme, int n, double p, long long h);

}  // namespace skipring
