// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skipring/numeric.hpp"

namespace skipring {

namespace {

void validate(const ConvergenceParams& c) {
  if (!(c.d_w > 0.0)) throw std::domain_error("convergence: d_w must be > 0");
  if (!(c.k > 0.0)) throw std::domain_error("convergence: k must be > 0");
  if (c.d <= 0) throw std::domain_error("convergence: d must be > 0");
  if (c.sigma < 0.0) throw std::domain_error("convergence: sigma must be >= 0");
  if (!(c.zeta > 0.0)) throw std::domain_error("convergence: zeta must be > 0");
  if (c.n < 2) throw std::domain_error("convergence: need at least two nodes");
  if (!(c.p >= 0.0) || !(c.p < 1.0)) {
    throw std::domain_error("convergence: p must lie in [0, 1)");
  }
  if (!(c.lambda1 >= 0.0) || !(c.lambda1 < 1.0)) {
    throw std::domain_error("convergence: lambda1 must lie in [0, 1)");
  }
  // The fixed ring never mixes without skipping; the bound only covers
  // p = 0 in the permuted scheme (lambda1 = 0).
  if (c.p == 0.0 && c.lambda1 != 0.0) {
    throw std::domain_error(
        "convergence: p = 0 requires the permuted scheme (lambda1 = 0)");
  }
}

}  // namespace

double e_h(const ConvergenceParams& c, long long h) {
  validate(c);
  if (h < 0) throw std::domain_error("convergence: h must be >= 0");
  if (h == 0) return c.d_w * c.k;

  double hp1 = static_cast<double>(h + 1);
  double sgd_term = (c.d_w * c.d_w +
                     c.zeta * c.zeta *
                         (c.k * c.k + static_cast<double>(c.d) * c.sigma *
                                          c.sigma)) *
                    (2.0 + std::log(hp1)) / (c.zeta * std::sqrt(hp1));

  double lam = c.lambda1;
  if (lam == 0.0) return sgd_term;

  // Geometric partial sums of lam^i over trailing windows:
  //   S_j = sum_{i = h+1-j}^{h+1} lam^i = (lam^(h+1-j) - lam^(h+2)) / (1-lam)
  // The j-loop walks the window start downward from i = h+1 so each step
  // multiplies one power instead of recomputing it. Powers below 1e-300
  // are flushed to zero, and the scan stops once the largest remaining
  // term cannot move the total at relative 1e-16.
  double top = std::pow(lam, static_cast<double>(h) + 2.0);
  if (!(top > 1e-300)) top = 0.0;
  double inv1m = 1.0 / (1.0 - lam);

  double term_a = (lam - top) * inv1m / hp1;

  numeric::KahanSum term_b;
  double power = lam;  // lam^(h+1-j) for the current j, starting at j = h
  for (long long j = h; j >= 1; --j) {
    double s_j = (power - top) * inv1m;
    double jd = static_cast<double>(j);
    term_b.add(s_j / (jd * (jd + 1.0)));
    // The windows shrink as j falls, so every remaining term is at most
    // s_j times its weight, and the weights 1/(j'(j'+1)) sum below 1. Once
    // s_j itself is negligible against the running total, so is the tail.
    if (s_j < 1e-16 * (term_b.value() + term_a) && j < h) break;
    power *= lam;
    if (!(power > 1e-300)) power = 0.0;
  }

  double mix_term = c.d_w * c.k * std::sqrt(static_cast<double>(c.n)) *
                    (term_a + term_b.value());
  return sgd_term + mix_term;
}

double error_bound(const ConvergenceParams& c) {
  validate(c);
  if (c.h_max <= 0) throw std::domain_error("convergence: h_max must be > 0");

  if (c.p == 0.0) return e_h(c, c.h_max);

  long long hm = c.h_max;
  double logp = std::log(c.p);
  double log1mp = std::log1p(-c.p);

  auto log_pmf = [&](long long h) {
    return numeric::log_choose(hm, h) + static_cast<double>(h) * log1mp +
           static_cast<double>(hm - h) * logp;
  };

  // Walk outward from the mode, accumulating weight * e_h until the
  // covered binomial mass reaches 1 - 1e-12. Never touches the far tails,
  // so h_max up to 1e6 costs only the width of the central bulge.
  long long mode = static_cast<long long>(
      std::floor(static_cast<double>(hm + 1) * (1.0 - c.p)));
  mode = std::clamp(mode, 0LL, hm);

  numeric::KahanSum total;
  numeric::KahanSum mass;
  double lw_mode = log_pmf(mode);

  long long lo = mode, hi = mode;
  double w = std::exp(lw_mode);
  total.add(w * e_h(c, mode));
  mass.add(w);
  double lw_lo = lw_mode, lw_hi = lw_mode;
  while (mass.value() < 1.0 - 1e-12 && (lo > 0 || hi < hm)) {
    // Extend on whichever side currently has the larger next term.
    double next_lo = lo > 0 ? lw_lo + std::log(static_cast<double>(lo) /
                                               static_cast<double>(hm - lo + 1)) +
                                  logp - log1mp
                            : -std::numeric_limits<double>::infinity();
    double next_hi = hi < hm
                         ? lw_hi + std::log(static_cast<double>(hm - hi) /
                                            static_cast<double>(hi + 1)) +
                               log1mp - logp
                         : -std::numeric_limits<double>::infinity();
    if (next_lo >= next_hi) {
      --lo;
      lw_lo = next_lo;
      w = std::exp(lw_lo);
      total.add(w * e_h(c, lo));
    } else {
      ++hi;
      lw_hi = next_hi;
      w = std::exp(lw_hi);
      total.add(w * e_h(c, hi));
    }
    mass.add(w);
  }
  return total.value();
}

std::vector<std::pair<long long, double>> asymptotic_rate_check(
    ConvergenceParams c, const std::vector<long long>& h_grid) {
  std::vector<std::pair<long long, double>> out;
  out.reserve(h_grid.size());
  for (long long h : h_grid) {
    long long rounded = ((h + c.n - 1) / c.n) * c.n;
    c.h_max = rounded;
    double b = error_bound(c);
    double hd = static_cast<double>(rounded);
    out.emplace_back(rounded, b * std::sqrt(hd) / std::log(hd));
  }
  return out;
}

}  // namespace skipring
