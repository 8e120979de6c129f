// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace skipring {

struct Dataset {
  std::vector<std::vector<double>> x;  // row-major features
  std::vector<double> y;               // labels in {-1, +1} after binarize
  std::vector<std::string> feature_names;
};

// How to turn a continuous label column into {-1, +1}: above the threshold
// maps to +1, at or below to -1. kMedian resolves the threshold to the
// label column's median; kNone requires labels already in {-1, +1} or
// {0, 1} (the latter mapped to {-1, +1}).
struct BinarizeRule {
  enum class Kind { kNone, kThreshold, kMedian };
  Kind kind = Kind::kMedian;
  double threshold = 0.0;  // used by kThreshold only
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t rows_rejected = 0;        // rows with missing/unparsable cells
  std::size_t positive_count = 0;
  std::size_t negative_count = 0;
  std::vector<std::string> warnings;    // one entry per anomaly, row+column
  double label_threshold = 0.0;         // resolved threshold (median, etc.)
};

// Reads a delimited text file with one header row. label_column names the
// label; every other column is a feature. Rows with missing or unparsable
// cells are rejected, counted, and named (row and column) in the report,
// never silently dropped. Throws on a missing label column or when no
// usable rows remain.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const BinarizeRule& rule, char delimiter = ',',
                 LoadReport* report = nullptr);

// Standardizes each feature to zero mean and unit population variance;
// constant columns become all-zero.
void standardize_columns(Dataset& ds);

// Scales each row to unit L2 norm. All-zero rows are dropped with a
// warning appended to the report. Idempotent on its own output.
void normalize_rows(Dataset& ds, LoadReport* report = nullptr);

// standardize_columns then normalize_rows, applied to the full dataset
// before any split (the reference pipeline computes statistics on the
// full data; a known leakage simplification kept for comparability).
void preprocess(Dataset& ds, LoadReport* report = nullptr);

struct SplitResult {
  std::vector<std::vector<std::size_t>> partitions;  // n disjoint train parts
  std::vector<std::size_t> test_indices;
};

// Shuffles row indices with gen, keeps train_fraction of them (rounded) as
// training rows dealt round-robin into n nearly equal partitions (sizes
// differ by at most 1), and returns the rest as the test set. Errors when
// fewer training rows than nodes.
SplitResult split(const Dataset& ds, int n, double train_fraction,
                  std::mt19937_64& gen);

}  // namespace skipring
