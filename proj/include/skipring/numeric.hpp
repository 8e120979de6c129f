// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>

namespace skipring::numeric {

// Regularized lower incomplete gamma P(a, x), absolute error <= 1e-14 in
// practice. Series expansion for x < a + 1, Lentz continued fraction
// otherwise. a > 0, x >= 0.
double lower_regularized_gamma(double a, double x);

// Q(a, x) = 1 - P(a, x), computed by whichever branch is the direct one so
// small tails are not lost to cancellation.
double upper_regularized_gamma(double a, double x);

// ln C(n, k) via lgamma; exact enough for n up to ~1e15.
double log_choose(long long n, long long k);

// Compensated accumulator for long sums of same-sign terms.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Recursive adaptive Simpson quadrature of f over [a, b] to absolute
// tolerance abs_tol. Handles integrable endpoint singularities by depth
// alone; max_depth caps the recursion.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 55);

// Golden-section minimization of a unimodal f over [lo, hi] to relative
// interval tolerance rel_tol. Returns the midpoint of the final bracket.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double rel_tol);

}  // namespace skipring::numeric
