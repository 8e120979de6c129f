// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/sgd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skipring {

void project(std::vector<double>& theta, const ProjectionDomain& domain) {
  double norm_sq = 0.0;
  for (double v : theta) norm_sq += v * v;
  double norm = std::sqrt(norm_sq);
  if (norm > domain.radius) {
    double scale = domain.radius / norm;
    for (double& v : theta) v *= scale;
  }
}

std::vector<double> logistic_gradient(const std::vector<double>& theta,
                                      const Dataset& ds,
                                      const std::vector<std::size_t>& rows) {
  if (rows.empty()) throw std::domain_error("gradient: empty batch");
  std::vector<double> g(theta.size(), 0.0);
  for (std::size_t r : rows) {
    const auto& x = ds.x[r];
    double margin = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) margin += theta[j] * x[j];
    margin *= ds.y[r];
    // d/dtheta log(1 + exp(-y theta.x)) = -y x sigmoid(-margin)
    double s;
    if (margin > 0.0) {
      double e = std::exp(-margin);
      s = e / (1.0 + e);
    } else {
      s = 1.0 / (1.0 + std::exp(margin));
    }
    double coef = -ds.y[r] * s;
    for (std::size_t j = 0; j < theta.size(); ++j) g[j] += coef * x[j];
  }
  double inv = 1.0 / static_cast<double>(rows.size());
  for (double& v : g) v *= inv;
  return g;
}

double logistic_loss(const std::vector<double>& theta, const Dataset& ds,
                     const std::vector<std::size_t>& rows) {
  if (rows.empty()) throw std::domain_error("loss: empty set");
  double total = 0.0;
  for (std::size_t r : rows) {
    const auto& x = ds.x[r];
    double margin = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) margin += theta[j] * x[j];
    margin *= ds.y[r];
    // log(1 + exp(-m)) computed stably on both sides
    total += margin > 0.0 ? std::log1p(std::exp(-margin))
                          : -margin + std::log1p(std::exp(margin));
  }
  return total / static_cast<double>(rows.size());
}

double test_error(const std::vector<double>& theta, const Dataset& ds,
                  const std::vector<std::size_t>& rows) {
  if (rows.empty()) throw std::domain_error("test_error: empty set");
  std::size_t wrong = 0;
  for (std::size_t r : rows) {
    const auto& x = ds.x[r];
    double margin = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) margin += theta[j] * x[j];
    double pred = margin >= 0.0 ? 1.0 : -1.0;
    if (pred != ds.y[r]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(rows.size());
}

namespace {

// Without-replacement batch: the first batch_size entries of a partial
// Fisher-Yates pass over the node's scratch index copy.
void draw_batch(std::vector<std::size_t>& scratch, std::size_t batch_size,
                std::mt19937_64& gen, std::vector<std::size_t>& out) {
  std::size_t m = std::min(batch_size, scratch.size());
  out.clear();
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j =
        i + static_cast<std::size_t>(gen() % (scratch.size() - i));
    std::swap(scratch[i], scratch[j]);
    out.push_back(scratch[i]);
  }
}

}  // namespace

bool token_step(Token& token, int node, const Dataset& train,
                const std::vector<std::vector<std::size_t>>& partitions,
                const ProjectionDomain& domain, const SkipPolicy& policy,
                const LatencyModel& model, const RunOptions& opts,
                double zeta, RngStreams& rng) {
  double t = sample(model, rng.latency);
  ++token.h;
  if (t > policy.t_skip) {
    token.cumulative_latency += policy.chi + policy.t_skip;
    return false;
  }
  token.cumulative_latency += policy.chi + t;

  std::vector<std::size_t> scratch = partitions[static_cast<std::size_t>(node)];
  std::vector<std::size_t> batch;
  draw_batch(scratch, opts.batch_size, rng.batch, batch);

  std::vector<double> g = logistic_gradient(token.theta, train, batch);
  double eta = zeta / std::sqrt(static_cast<double>(token.c));
  GaussianSampler gauss;
  for (std::size_t j = 0; j < token.theta.size(); ++j) {
    double noise = opts.sigma > 0.0 ? opts.sigma * gauss(rng.noise) : 0.0;
    token.theta[j] -= eta * (g[j] + noise);
  }
  project(token.theta, domain);
  ++token.c;
  return true;
}

RunRecord run(const VisitPlan& plan, const Dataset& train,
              const std::vector<std::vector<std::size_t>>& partitions,
              const ProjectionDomain& domain, const SkipPolicy& policy,
              const LatencyModel& model, const RunOptions& opts, double zeta,
              const Dataset& eval, const std::vector<std::size_t>& eval_rows,
              RngStreams& rng) {
  if (partitions.size() != static_cast<std::size_t>(plan.n)) {
    throw std::domain_error("run: one partition per node required");
  }
  for (const auto& part : partitions) {
    if (part.empty()) throw std::domain_error("run: empty partition");
  }
  std::size_t d = train.x.empty() ? 0 : train.x[0].size();

  Token token;
  token.theta.assign(d, 0.0);

  long long eval_period = opts.eval_period > 0
                              ? opts.eval_period
                              : static_cast<long long>(plan.n);

  RunRecord rec;
  auto record = [&]() {
    RunRecordRow row;
    row.hop = token.h;
    row.updates = token.c - 1;
    row.cumulative_latency_s = token.cumulative_latency;
    row.test_error = test_error(token.theta, eval, eval_rows);
    row.token_hash = fnv1a(token.theta.data(), d * sizeof(double));
    rec.rows.push_back(row);
  };
  record();

  for (long long h = 0; h < static_cast<long long>(plan.nodes.size()); ++h) {
    bool updated =
        token_step(token, plan.nodes[static_cast<std::size_t>(h)], train,
                   partitions, domain, policy, model, opts, zeta, rng);
    if (updated) {
      double norm_sq = 0.0;
      for (double v : token.theta) norm_sq += v * v;
      rec.max_theta_norm = std::max(rec.max_theta_norm, std::sqrt(norm_sq));
    }
    if (token.h % eval_period == 0) record();
  }

  rec.final_theta = token.theta;
  rec.update_count = token.c - 1;
  rec.total_latency = token.cumulative_latency;
  return rec;
}

}  // namespace skipring
