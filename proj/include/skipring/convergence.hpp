// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

namespace skipring {

struct ConvergenceParams {
  double d_w = 10.0;    // diameter of the feasible ball
  double k = 1.0;       // gradient norm bound
  int d = 8;            // model dimension
  double sigma = 0.0;   // per-coordinate noise std
  double zeta = 0.03;   // step size scale, eta_c = zeta / sqrt(c)
  int n = 10;           // ring size
  double p = 0.0;       // per-hop skip probability
  long long h_max = 0;  // total hops
  double lambda1 = 0.0; // mixing modulus of the schedule
};

// Expected optimality-gap bound conditioned on exactly h updates having
// happened. h = 0 degenerates to d_w * k. Cost O(min(h, cutoff)) where the
// cutoff drops lambda1 powers below 1e-300 and truncates the inner-sum
// scan once its remainder cannot move the total by a relative 1e-16.
double e_h(const ConvergenceParams& c, long long h);

// Bound on the expected optimality gap after h_max hops: the e_h averaged
// over the Binomial(h_max, 1 - p) distribution of the update count. The
// binomial mass is accumulated outward from its mode in log space until
// the covered probability reaches 1 - 1e-12.
double error_bound(const ConvergenceParams& c);

// Normalized bound values error_bound * sqrt(h_max) / log(h_max) on a log
// grid of h_max values; flat-to-bounded output checks the O(log h / sqrt h)
// decay rate. Each grid value is rounded up to a multiple of c.n.
std::vector<std::pair<long long, double>> asymptotic_rate_check(
    ConvergenceParams c, const std::vector<long long>& h_grid);

}  // namespace skipring
