// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>
#include <string>

namespace skipring {

// Per-hop computation time distribution. Three families:
//   exponential: a = mean
//   gamma:       a = shape, b = scale
//   pareto2:     a = shape (> 1 required for a finite mean), b = scale
struct LatencyModel {
  enum class Kind { kExponential, kGamma, kParetoII };

  Kind kind = Kind::kExponential;
  double a = 1.0;
  double b = 1.0;

  static LatencyModel Exponential(double mean);
  static LatencyModel Gamma(double shape, double scale);
  static LatencyModel ParetoII(double shape, double scale);

  double mean() const;
  std::string name() const;
};

double cdf(const LatencyModel& m, double t);

// Inverse survival: the t with 1 - cdf(m, t) = p, for p in (0, 1]. p = 1
// returns 0. Closed form for the exponential and pareto2 families;
// bracketed bisection on the cdf for gamma (cdf(result) = 1 - p within
// 1e-9). p = 0 is a domain error here; the never-skip case is the
// SkipPolicy +inf sentinel.
double quantile(const LatencyModel& m, double p);

double sample(const LatencyModel& m, std::mt19937_64& gen);

// E[T * 1{T <= t_skip}] (unnormalized). For gamma this integrates x * pdf(x)
// by adaptive quadrature to absolute tolerance 1e-10; the other families are
// closed form. t_skip = +inf yields the full mean.
double truncated_mean(const LatencyModel& m, double t_skip);

// Timeout policy for one hop: wait at most t_skip, skip with probability
// p = 1 - cdf(t_skip). chi is the deterministic per-hop transfer time.
// Exactly one of the two constructors fixes the free parameter; the other
// value is derived so that p == 1 - cdf(t_skip) always holds.
struct SkipPolicy {
  double t_skip = 0.0;
  double p = 0.0;
  double chi = 0.0;

  static SkipPolicy FromTimeout(const LatencyModel& m, double t_skip,
                                double chi);
  static SkipPolicy FromSkipProbability(const LatencyModel& m, double p,
                                        double chi);
};

// E[chi + min(T, t_skip)] for one hop.
double expected_hop_latency(const LatencyModel& m, const SkipPolicy& policy);

// Expected total wall-clock time of h_max hops.
double expected_total_latency(const LatencyModel& m, const SkipPolicy& policy,
                              long long h_max);

// Expected wall-clock time per completed (non-skipped) update:
// (chi + E[min(T, t_skip)]) / cdf(t_skip). Errors when cdf(t_skip) == 0.
double time_between_updates(const LatencyModel& m, const SkipPolicy& policy);

struct TimeoutChoice {
  double t_skip = 0.0;     // +inf means "never skip"
  double p = 0.0;          // 1 - cdf(t_skip)
  double objective = 0.0;  // time_between_updates at the optimum
};

// Minimizes time_between_updates over t_skip in (0, +inf]. Scans a log grid
// over [1e-6, 1e4] plus the +inf endpoint, then refines the best interior
// bracket by golden section to relative tolerance 1e-6.
TimeoutChoice optimal_t_skip(const LatencyModel& m, double chi);

}  // namespace skipring
