// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "skipring/config.hpp"

namespace skipring {

// Each command writes CSV files under cfg.out_dir (created if needed) with
// a leading provenance comment line carrying the resolved config and the
// master seed. Returns 0 on success.

// bounds.csv: h_max, avg_latency_s, error_bound, epsilon_skip over
// cfg.h_grid (or the single cfg.h_max when the grid is empty).
int cmd_bounds(const RunConfig& cfg, std::uint64_t master_seed);

// optimal_tskip.csv: one row per latency family with the minimizing
// timeout, its skip probability, and the objective value.
int cmd_optimal_tskip(const RunConfig& cfg, std::uint64_t master_seed);

// train_seed<seed>.csv per seed plus train_aggregate.csv: test error
// against wall-clock latency, aggregated over 50 latency buckets
// (mean, std, n_seeds per bucket).
int cmd_train(const RunConfig& cfg, std::optional<std::uint64_t> seed_override);

// One subdirectory per swept value, each holding the bounds output, plus
// sweep_index.csv written last so a complete index implies complete cells.
int cmd_sweep(const RunConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::uint64_t master_seed);

}  // namespace skipring
