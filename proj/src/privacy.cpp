// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/privacy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "skipring/numeric.hpp"

namespace skipring {

namespace {

void validate(const PrivacyParams& pp) {
  if (!(pp.epsilon > 0.0) || !(pp.epsilon <= 1.0)) {
    throw std::domain_error("privacy: epsilon must lie in (0, 1]");
  }
  if (!(pp.delta > 0.0) || !(pp.delta < 1.0)) {
    throw std::domain_error("privacy: delta must lie in (0, 1)");
  }
  if (!(pp.delta_prime > 0.0) || !(pp.delta_prime < 1.0)) {
    throw std::domain_error("privacy: delta_prime must lie in (0, 1)");
  }
  if (!(pp.k > 0.0)) throw std::domain_error("privacy: k must be > 0");
  if (pp.n < 2) throw std::domain_error("privacy: need at least two nodes");
  if (!(pp.p >= 0.0) || !(pp.p < 1.0)) {
    throw std::domain_error("privacy: p must lie in [0, 1)");
  }
  if (pp.h_max <= 0) throw std::domain_error("privacy: h_max must be > 0");
}

}  // namespace

double calibrate_sigma(double epsilon, double delta, double k) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) {
    throw std::domain_error("privacy: epsilon must lie in (0, 1]");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::domain_error("privacy: delta must lie in (0, 1)");
  }
  if (!(k > 0.0)) throw std::domain_error("privacy: k must be > 0");
  return k * std::sqrt(8.0 * std::log(1.25 / delta)) / epsilon;
}

long long h_tilde(long long h_max, double p, int n, double delta_prime) {
  if (h_max <= 0) throw std::domain_error("privacy: h_max must be > 0");
  if (n < 2) throw std::domain_error("privacy: need at least two nodes");
  if (!(p >= 0.0) || !(p < 1.0)) {
    throw std::domain_error("privacy: p must lie in [0, 1)");
  }
  if (!(delta_prime > 0.0) || !(delta_prime < 1.0)) {
    throw std::domain_error("privacy: delta_prime must lie in (0, 1)");
  }
  double mu = static_cast<double>(h_max) * (1.0 - p) / static_cast<double>(n);
  double bound = mu + std::sqrt(3.0 * mu * std::log(1.0 / delta_prime));
  return static_cast<long long>(std::ceil(bound));
}

double gamma_rh(long long r, long long h) {
  if (r < 0 || h < 1) {
    throw std::domain_error("privacy: need r >= 0 and h >= 1");
  }
  // 4 (1 + rh) (sqrt(1 + rh + h) - sqrt(1 + rh))^2, written with the
  // conjugate so large rh does not cancel the difference away.
  double rh = static_cast<double>(r) * static_cast<double>(h);
  double root_sum = std::sqrt(1.0 + rh + static_cast<double>(h)) +
                    std::sqrt(1.0 + rh);
  double diff = static_cast<double>(h) / root_sum;
  return 4.0 * (1.0 + rh) * diff * diff;
}

double rdp_to_dp(double alpha, double eps_rdp, double delta) {
  if (!(alpha > 1.0)) throw std::domain_error("privacy: alpha must be > 1");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::domain_error("privacy: delta must lie in (0, 1)");
  }
  return eps_rdp + std::log(1.0 / delta) / (alpha - 1.0);
}

double compose_rdp(const std::vector<double>& eps_rdp_list) {
  numeric::KahanSum acc;
  for (double e : eps_rdp_list) {
    if (e < 0.0) throw std::domain_error("privacy: Renyi epsilons must be >= 0");
    acc.add(e);
  }
  return acc.value();
}

PrivacyBound epsilon_skip_ring(const PrivacyParams& pp) {
  validate(pp);
  PrivacyBound out;
  out.sigma = calibrate_sigma(pp.epsilon, pp.delta, pp.k);
  out.h_tilde = h_tilde(pp.h_max, pp.p, pp.n, pp.delta_prime);
  double ht = static_cast<double>(out.h_tilde);
  double l125 = std::log(1.25 / pp.delta);
  out.epsilon_skip =
      pp.epsilon * std::sqrt(ht * std::log(1.0 / pp.delta)) / std::sqrt(l125) +
      pp.epsilon * pp.epsilon * ht / (4.0 * l125);
  out.total_delta = pp.delta + pp.delta_prime;
  return out;
}

PrivacyBound epsilon_skip_rand_ring(const PrivacyParams& pp) {
  validate(pp);
  PrivacyBound out;
  out.sigma = calibrate_sigma(pp.epsilon, pp.delta, pp.k);
  out.h_tilde = h_tilde(pp.h_max, pp.p, pp.n, pp.delta_prime);

  // a = (1/(n-1)) sum_{r<h_tilde} sum_{d=1}^{n-1} sum_{h=1}^{d}
  //       h C(d,h) p^(d-h) (1-p)^h / gamma_rh(r, h)
  // The r-sum depends on h alone, so it is hoisted: S_h = sum_r 1/gamma_rh.
  int n = pp.n;
  std::vector<double> s_h(static_cast<std::size_t>(n), 0.0);
  for (int h = 1; h <= n - 1; ++h) {
    numeric::KahanSum acc;
    for (long long r = 0; r < out.h_tilde; ++r) {
      acc.add(1.0 / gamma_rh(r, h));
    }
    s_h[static_cast<std::size_t>(h)] = acc.value();
  }

  double log1mp = std::log1p(-pp.p);
  numeric::KahanSum a_sum;
  for (int d = 1; d <= n - 1; ++d) {
    for (int h = 1; h <= d; ++h) {
      // p = 0 contributes only at h = d; writing the log weight this way
      // avoids 0 * log(0).
      double lw = numeric::log_choose(d, h) +
                  static_cast<double>(h) * log1mp;
      if (d > h) {
        if (pp.p == 0.0) continue;
        lw += static_cast<double>(d - h) * std::log(pp.p);
      }
      a_sum.add(static_cast<double>(h) * std::exp(lw) *
                s_h[static_cast<std::size_t>(h)]);
    }
  }
  out.a = a_sum.value() / static_cast<double>(n - 1);

  double l125 = std::log(1.25 / pp.delta);
  double l1d = std::log(1.0 / pp.delta);
  double cand1 =
      std::sqrt(2.0 * l1d * l125) / (pp.epsilon * std::sqrt(out.a)) + 1.0;
  double cand2 =
      (1.0 + std::sqrt(16.0 * l125 / (pp.epsilon * pp.epsilon) + 1.0)) / 2.0;
  out.alpha = std::min(cand1, cand2);
  if (!(out.alpha > 1.0)) {
    throw std::domain_error("privacy: no valid Renyi order > 1 exists");
  }

  out.epsilon_skip = pp.epsilon * pp.epsilon * out.a * out.alpha /
                         (2.0 * l125) +
                     l1d / (out.alpha - 1.0);
  out.total_delta = pp.delta + pp.delta_prime;
  return out;
}

}  // namespace skipring
