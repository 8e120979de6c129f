// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "skipring/data.hpp"
#include "skipring/latency.hpp"
#include "skipring/rng.hpp"
#include "skipring/schedule.hpp"

namespace skipring {

// Mutable state passed around the ring. c counts completed updates plus
// one, so the step size of the c-th update is zeta / sqrt(c); it only
// advances on updates, never on skips.
struct Token {
  std::vector<double> theta;
  long long c = 1;
  long long h = 0;
  double cumulative_latency = 0.0;
};

// Feasible set: the L2 ball of the given radius centered at the origin.
struct ProjectionDomain {
  double radius = 5.0;
};

// Euclidean projection onto the ball (no-op inside it).
void project(std::vector<double>& theta, const ProjectionDomain& domain);

// Mean logistic-loss gradient of theta over the given rows. Labels must be
// in {-1, +1}.
std::vector<double> logistic_gradient(const std::vector<double>& theta,
                                      const Dataset& ds,
                                      const std::vector<std::size_t>& rows);

double logistic_loss(const std::vector<double>& theta, const Dataset& ds,
                     const std::vector<std::size_t>& rows);

// Fraction of rows with sign(theta . x) != y, predicting +1 on ties.
double test_error(const std::vector<double>& theta, const Dataset& ds,
                  const std::vector<std::size_t>& rows);

struct RunOptions {
  std::size_t batch_size = 32;
  double sigma = 0.0;           // per-coordinate Gaussian noise std
  long long eval_period = 0;    // hops between eval rows; 0 means every n
};

struct RunRecordRow {
  long long hop = 0;
  long long updates = 0;
  double cumulative_latency_s = 0.0;
  double test_error = 0.0;
  std::uint64_t token_hash = 0;
};

struct RunRecord {
  std::vector<RunRecordRow> rows;
  std::vector<double> final_theta;
  long long update_count = 0;
  double total_latency = 0.0;
  double max_theta_norm = 0.0;
};

// One hop: draw the local computation time, then either update (projected
// noisy SGD step on a fresh without-replacement batch from the node's
// partition, latency += chi + t) or skip (latency += chi + t_skip, c and
// theta untouched). Returns true if the hop updated.
bool token_step(Token& token, int node, const Dataset& train,
                const std::vector<std::vector<std::size_t>>& partitions,
                const ProjectionDomain& domain, const SkipPolicy& policy,
                const LatencyModel& model, const RunOptions& opts,
                double zeta, RngStreams& rng);

// Full simulation of a visit plan. Evaluation rows are appended at hop 0
// and every eval_period hops (default: every n) against eval_rows of eval.
RunRecord run(const VisitPlan& plan, const Dataset& train,
              const std::vector<std::vector<std::size_t>>& partitions,
              const ProjectionDomain& domain, const SkipPolicy& policy,
              const LatencyModel& model, const RunOptions& opts, double zeta,
              const Dataset& eval, const std::vector<std::size_t>& eval_rows,
              RngStreams& rng);

}  // namespace skipring
