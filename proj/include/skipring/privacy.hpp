// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace skipring {

struct PrivacyParams {
  double epsilon = 1.0;       // per-update DP target, 0 < epsilon <= 1
  double delta = 1e-6;        // per-update DP slack
  double delta_prime = 0.1;   // slack of the visit-count concentration step
  double k = 1.0;             // per-sample gradient norm bound
  int n = 10;                 // ring size
  double p = 0.0;             // per-hop skip probability
  long long h_max = 0;        // total hops
};

struct PrivacyBound {
  double sigma = 0.0;         // calibrated per-coordinate noise std
  long long h_tilde = 0;      // high-probability per-node update count
  double alpha = 0.0;         // Renyi order used (rand-ring only, else 0)
  double a = 0.0;             // amplification sum (rand-ring only, else 0)
  double epsilon_skip = 0.0;  // network-level epsilon
  double total_delta = 0.0;   // delta + delta_prime
};

// Gaussian-mechanism noise scale for a single (epsilon, delta)-DP update
// with sensitivity k: sigma = k * sqrt(8 ln(1.25 / delta)) / epsilon.
// Requires 0 < epsilon <= 1.
double calibrate_sigma(double epsilon, double delta, double k);

// Upper bound, valid except with probability delta_prime, on how many
// updates any single node contributes among h_max hops:
// ceil(mu + sqrt(3 mu ln(1 / delta_prime))) with mu = h_max (1 - p) / n.
long long h_tilde(long long h_max, double p, int n, double delta_prime);

// Subsampled-Gaussian Renyi divergence denominator for a node whose update
// is observed h hops after the adversary's last observation, with r full
// rounds in between: 4 (1 + r h) (sqrt(1 + r h + h) - sqrt(1 + r h))^2.
double gamma_rh(long long r, long long h);

// Network-level epsilon of the fixed ring: strong composition of h_tilde
// per-update releases. Adds no amplification (the observer knows the walk).
PrivacyBound epsilon_skip_ring(const PrivacyParams& pp);

// Network-level epsilon of the randomized ring: Renyi accounting with the
// skip-and-shuffle amplification sum a, converted back to (epsilon, delta)
// at the better of the two candidate Renyi orders. Asserts the chosen
// order stays > 1.
PrivacyBound epsilon_skip_rand_ring(const PrivacyParams& pp);

// (alpha, eps_rdp) Renyi guarantee to (epsilon, delta) DP:
// eps = eps_rdp + ln(1 / delta) / (alpha - 1). Requires alpha > 1.
double rdp_to_dp(double alpha, double eps_rdp, double delta);

// Renyi guarantees at a shared order compose additively; empty input
// composes to 0.
double compose_rdp(const std::vector<double>& eps_rdp_list);

}  // namespace skipring
