// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skipring/data.hpp"
#include "skipring/latency.hpp"
#include "skipring/schedule.hpp"

namespace skipring {

// Fully resolved run configuration. Parsed from JSON; exactly one of
// policy_t_skip / policy_p must be present in the file ("t_skip": "inf" is
// the never-skip sentinel).
struct RunConfig {
  SchemeKind scheme = SchemeKind::kSkipRing;
  int n = 10;

  LatencyModel latency = LatencyModel::Exponential(1.0);
  double chi = 0.01;
  std::optional<double> policy_t_skip;
  std::optional<double> policy_p;

  double epsilon = 1.0;
  double delta = 1e-6;
  double delta_prime = 0.1;
  double k = 1.0;

  double zeta = 0.03;
  double d_w = 10.0;
  std::size_t batch_size = 32;
  int d = 8;
  // Training noise defaults to the privacy-calibrated scale; an explicit
  // sgd.sigma (0 for the non-private baseline) overrides it.
  std::optional<double> sigma_override;

  std::string dataset_path;
  std::string label_column = "price";
  BinarizeRule binarize;
  double test_fraction = 0.2;

  std::vector<std::uint64_t> seeds{1};
  std::vector<long long> h_grid;
  long long h_max = 0;
  std::string out_dir = "out";

  // The convergence and privacy bounds assume zeta is matched to the loss
  // smoothness; the config asserts that matching rather than computing it.
  bool attest_zeta_smoothness = true;
};

// Parses and validates a JSON config file. Throws std::runtime_error with
// a field-naming message on any violation (unknown keys included).
RunConfig load_config(const std::string& path);

// Canonical one-line JSON rendering of the resolved config, used for the
// provenance comment at the top of every emitted CSV. Key order is sorted
// so reruns are byte-identical.
std::string config_fingerprint(const RunConfig& cfg);

// Resolves the (t_skip, p) pair against the configured latency model.
SkipPolicy resolve_policy(const RunConfig& cfg);

}  // namespace skipring
