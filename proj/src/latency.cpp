// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/latency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "skipring/numeric.hpp"
#include "skipring/rng.hpp"

namespace skipring {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LatencyModel LatencyModel::Exponential(double mean) {
  if (!(mean > 0.0)) throw std::domain_error("exponential: mean must be > 0");
  return {Kind::kExponential, mean, 0.0};
}

LatencyModel LatencyModel::Gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw std::domain_error("gamma: shape and scale must be > 0");
  }
  return {Kind::kGamma, shape, scale};
}

LatencyModel LatencyModel::ParetoII(double shape, double scale) {
  if (!(shape > 1.0)) {
    throw std::domain_error("pareto2: shape must be > 1 for a finite mean");
  }
  if (!(scale > 0.0)) throw std::domain_error("pareto2: scale must be > 0");
  return {Kind::kParetoII, shape, scale};
}

double LatencyModel::mean() const {
  switch (kind) {
    case Kind::kExponential:
      return a;
    case Kind::kGamma:
      return a * b;
    case Kind::kParetoII:
      return b / (a - 1.0);
  }
  throw std::logic_error("latency: unknown kind");
}

std::string LatencyModel::name() const {
  switch (kind) {
    case Kind::kExponential:
      return "exponential";
    case Kind::kGamma:
      return "gamma";
    case Kind::kParetoII:
      return "pareto2";
  }
  throw std::logic_error("latency: unknown kind");
}

double cdf(const LatencyModel& m, double t) {
  if (t < 0.0) throw std::domain_error("cdf: t must be >= 0");
  if (t == 0.0) return 0.0;
  if (std::isinf(t)) return 1.0;
  switch (m.kind) {
    case LatencyModel::Kind::kExponential:
      return -std::expm1(-t / m.a);
    case LatencyModel::Kind::kGamma:
      return numeric::lower_regularized_gamma(m.a, t / m.b);
    case LatencyModel::Kind::kParetoII:
      return -std::expm1(-m.a * std::log1p(t / m.b));
  }
  throw std::logic_error("latency: unknown kind");
}

double quantile(const LatencyModel& m, double p) {
  if (!(p > 0.0) || !(p <= 1.0)) {
    throw std::domain_error("quantile: skip probability must lie in (0, 1]");
  }
  if (p == 1.0) return 0.0;
  switch (m.kind) {
    case LatencyModel::Kind::kExponential:
      return -m.a * std::log(p);
    case LatencyModel::Kind::kParetoII:
      return m.b * (std::pow(p, -1.0 / m.a) - 1.0);
    case LatencyModel::Kind::kGamma: {
      // Bisect cdf over a bracket that always contains the quantile.
      double q = 1.0 - p;
      double lo = 0.0;
      double hi = m.mean() + 50.0 * m.b * std::max(1.0, m.a);
      while (cdf(m, hi) < q) hi *= 2.0;
      for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (cdf(m, mid) < q) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }
  }
  throw std::logic_error("latency: unknown kind");
}

double sample(const LatencyModel& m, std::mt19937_64& gen) {
  switch (m.kind) {
    case LatencyModel::Kind::kExponential:
      return -m.a * std::log(uniform01(gen));
    case LatencyModel::Kind::kParetoII:
      return m.b * (std::pow(uniform01(gen), -1.0 / m.a) - 1.0);
    case LatencyModel::Kind::kGamma: {
      // Marsaglia-Tsang squeeze; shapes below 1 are boosted via U^(1/a).
      double shape = m.a;
      double boost = 1.0;
      if (shape < 1.0) {
        boost = std::pow(uniform01(gen), 1.0 / shape);
        shape += 1.0;
      }
      double d = shape - 1.0 / 3.0;
      double c = 1.0 / std::sqrt(9.0 * d);
      for (;;) {
        double x, v;
        do {
          double u1 = uniform01(gen);
          double u2 = uniform01(gen);
          double r = std::sqrt(-2.0 * std::log(u1));
          x = r * std::cos(6.283185307179586476925286766559 * u2);
          v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform01(gen);
        if (u < 1.0 - 0.0331 * x * x * x * x) return m.b * d * v * boost;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
          return m.b * d * v * boost;
        }
      }
    }
  }
  throw std::logic_error("latency: unknown kind");
}

double truncated_mean(const LatencyModel& m, double t_skip) {
  if (t_skip < 0.0) throw std::domain_error("truncated_mean: t must be >= 0");
  if (t_skip == 0.0) return 0.0;
  if (std::isinf(t_skip)) return m.mean();
  switch (m.kind) {
    case LatencyModel::Kind::kExponential: {
      // E[T 1{T<=t}] = mean - (mean + t) e^(-t/mean)
      double e = std::exp(-t_skip / m.a);
      return m.a - (m.a + t_skip) * e;
    }
    case LatencyModel::Kind::kParetoII: {
      // Integrate the survival over [0, t] and subtract t * S(t):
      // E[T 1{T<=t}] = s/(a-1) (1 - (1+t/s)^(1-a)) - t (1+t/s)^(-a)
      double s = m.b, a = m.a;
      double base = 1.0 + t_skip / s;
      return s / (a - 1.0) * (1.0 - std::pow(base, 1.0 - a)) -
             t_skip * std::pow(base, -a);
    }
    case LatencyModel::Kind::kGamma: {
      double shape = m.a, scale = m.b;
      auto integrand = [shape, scale](double x) {
        if (x <= 0.0) return 0.0;
        double logpdf = (shape - 1.0) * std::log(x / scale) - x / scale -
                        std::lgamma(shape) - std::log(scale);
        return x * std::exp(logpdf);
      };
      // Mass beyond mean + 50 sd (at least 50 scale) is far below the 1e-10
      // budget; capping there keeps the quadrature probes inside the bulk.
      double cut = scale * (shape + 50.0 * std::max(1.0, std::sqrt(shape)));
      double upper = std::min(t_skip, cut);
      // One adaptive pass over the whole range can terminate early when the
      // initial probes all land in the flat tail, so integrate fixed panels.
      constexpr int kPanels = 16;
      double total = 0.0;
      for (int i = 0; i < kPanels; ++i) {
        double a = upper * static_cast<double>(i) / kPanels;
        double b = upper * static_cast<double>(i + 1) / kPanels;
        total += numeric::adaptive_simpson(integrand, a, b, 1e-10 / kPanels);
      }
      return total;
    }
  }
  throw std::logic_error("latency: unknown kind");
}

SkipPolicy SkipPolicy::FromTimeout(const LatencyModel& m, double t_skip,
                                   double chi) {
  if (t_skip < 0.0) throw std::domain_error("policy: t_skip must be >= 0");
  if (chi < 0.0) throw std::domain_error("policy: chi must be >= 0");
  SkipPolicy out;
  out.t_skip = t_skip;
  out.p = 1.0 - cdf(m, t_skip);
  out.chi = chi;
  return out;
}

SkipPolicy SkipPolicy::FromSkipProbability(const LatencyModel& m, double p,
                                           double chi) {
  if (!(p >= 0.0) || !(p < 1.0)) {
    throw std::domain_error("policy: p must lie in [0, 1)");
  }
  if (chi < 0.0) throw std::domain_error("policy: chi must be >= 0");
  SkipPolicy out;
  out.chi = chi;
  if (p == 0.0) {
    out.t_skip = kInf;
    out.p = 0.0;
    return out;
  }
  out.t_skip = quantile(m, p);
  // Re-derive p from the stored timeout so the pair satisfies
  // p == 1 - cdf(t_skip) to machine precision.
  out.p = 1.0 - cdf(m, out.t_skip);
  return out;
}

double expected_hop_latency(const LatencyModel& m, const SkipPolicy& policy) {
  // E[min(T, t)] = E[T 1{T<=t}] + t P(T > t)
  if (std::isinf(policy.t_skip)) return policy.chi + m.mean();
  return policy.chi + truncated_mean(m, policy.t_skip) +
         policy.t_skip * (1.0 - cdf(m, policy.t_skip));
}

double expected_total_latency(const LatencyModel& m, const SkipPolicy& policy,
                              long long h_max) {
  if (h_max < 0) throw std::domain_error("latency: h_max must be >= 0");
  return static_cast<double>(h_max) * expected_hop_latency(m, policy);
}

double time_between_updates(const LatencyModel& m, const SkipPolicy& policy) {
  double phi = 1.0 - policy.p;
  if (!(phi > 0.0)) {
    throw std::domain_error(
        "policy: no updates ever complete at t_skip with cdf 0");
  }
  return expected_hop_latency(m, policy) / phi;
}

TimeoutChoice optimal_t_skip(const LatencyModel& m, double chi) {
  auto objective = [&](double t) {
    return time_between_updates(m, SkipPolicy::FromTimeout(m, t, chi));
  };

  // Log grid over [1e-6, 1e4] plus the never-skip endpoint.
  constexpr int kGridPoints = 240;
  std::vector<double> grid(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    double f = static_cast<double>(i) / (kGridPoints - 1);
    grid[i] = std::pow(10.0, -6.0 + 10.0 * f);
  }

  int best = -1;
  double best_val = kInf;
  for (int i = 0; i < kGridPoints; ++i) {
    double v = objective(grid[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double inf_val = chi + m.mean();

  // Improvements below one part in 1e12 are quadrature noise (the objective
  // flattens once cdf saturates); the never-skip endpoint is exact there.
  auto prefers_inf = [inf_val](double v) {
    return inf_val <= v * (1.0 + 1e-12);
  };
  if (prefers_inf(best_val)) {
    return {kInf, 0.0, inf_val};
  }

  double lo = best > 0 ? grid[best - 1] : grid[best] * 0.5;
  double hi = best + 1 < kGridPoints ? grid[best + 1] : grid[best] * 2.0;
  double t_star = numeric::golden_section_min(objective, lo, hi, 1e-6);
  double val = objective(t_star);
  if (prefers_inf(val)) {
    return {kInf, 0.0, inf_val};
  }
  return {t_star, 1.0 - cdf(m, t_star), val};
}

}  // namespace skipring
