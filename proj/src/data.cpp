// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace skipring {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double* out) {
  std::string t = trim(s);
  if (t.empty()) return false;
  std::size_t pos = 0;
  try {
    *out = std::stod(t, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == t.size();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  if (v.size() % 2 == 1) return v[m];
  return 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const BinarizeRule& rule, char delimiter,
                 LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path);

  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = LoadReport{};

  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_csv: empty file " + path);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> header = split_line(line, delimiter);
  for (auto& h : header) h = trim(h);
  std::size_t label_idx = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == label_column) {
      label_idx = i;
      break;
    }
  }
  if (label_idx == header.size()) {
    throw std::runtime_error("load_csv: label column '" + label_column +
                             "' not found in " + path);
  }

  Dataset ds;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i != label_idx) ds.feature_names.push_back(header[i]);
  }

  std::vector<double> raw_labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++rep.rows_read;
    std::vector<std::string> cells = split_line(line, delimiter);
    if (cells.size() != header.size()) {
      ++rep.rows_rejected;
      rep.warnings.push_back("row " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(cells.size()));
      continue;
    }
    std::vector<double> features;
    features.reserve(header.size() - 1);
    double label = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v = 0.0;
      if (!parse_double(cells[i], &v)) {
        ++rep.rows_rejected;
        rep.warnings.push_back("row " + std::to_string(line_no) +
                               ", column '" + header[i] +
                               "': missing or non-numeric cell");
        ok = false;
        break;
      }
      if (i == label_idx) {
        label = v;
      } else {
        features.push_back(v);
      }
    }
    if (!ok) continue;
    ds.x.push_back(std::move(features));
    raw_labels.push_back(label);
  }

  if (ds.x.empty()) {
    throw std::runtime_error("load_csv: no usable rows in " + path);
  }

  double threshold = 0.0;
  switch (rule.kind) {
    case BinarizeRule::Kind::kMedian:
      threshold = median(raw_labels);
      break;
    case BinarizeRule::Kind::kThreshold:
      threshold = rule.threshold;
      break;
    case BinarizeRule::Kind::kNone:
      break;
  }
  rep.label_threshold = threshold;

  ds.y.reserve(raw_labels.size());
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    double v = raw_labels[i];
    double y;
    if (rule.kind == BinarizeRule::Kind::kNone) {
      if (v == 1.0 || v == -1.0) {
        y = v;
      } else if (v == 0.0) {
        y = -1.0;
      } else {
        throw std::runtime_error(
            "load_csv: label value " + std::to_string(v) +
            " is not in {-1, 0, 1}; set a binarization threshold");
      }
    } else {
      y = v > threshold ? 1.0 : -1.0;
    }
    ds.y.push_back(y);
    if (y > 0.0) {
      ++rep.positive_count;
    } else {
      ++rep.negative_count;
    }
  }
  return ds;
}

void standardize_columns(Dataset& ds) {
  if (ds.x.empty()) return;
  std::size_t d = ds.x[0].size();
  std::size_t rows = ds.x.size();
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < rows; ++i) mean += ds.x[i][j];
    mean /= static_cast<double>(rows);
    double var = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      double dlt = ds.x[i][j] - mean;
      var += dlt * dlt;
    }
    var /= static_cast<double>(rows);
    double std_dev = std::sqrt(var);
    if (std_dev == 0.0) {
      for (std::size_t i = 0; i < rows; ++i) ds.x[i][j] = 0.0;
    } else {
      for (std::size_t i = 0; i < rows; ++i) {
        ds.x[i][j] = (ds.x[i][j] - mean) / std_dev;
      }
    }
  }
}

void normalize_rows(Dataset& ds, LoadReport* report) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < ds.x.size(); ++i) {
    double norm(0.0);
    for (double v : ds.x[i]) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) {
      if (report) {
        report->warnings.push_back("row " + std::to_string(i) +
                                   ": all-zero after standardization; dropped");
      }
      continue;
    }
    for (double& v : ds.x[i]) v /= norm;
    if (out != i) {
      ds.x[out] = std::move(ds.x[i]);
      ds.y[out] = ds.y[i];
    }
    ++out;
  }
  ds.x.resize(out);
  ds.y.resize(out);
}

void preprocess(Dataset& ds, LoadReport* report) {
  if (ds.x.empty()) throw std::runtime_error("preprocess: empty dataset");
  standardize_columns(ds);
  normalize_rows(ds, report);
}

SplitResult split(const Dataset& ds, int n, double train_fraction,
                  std::mt19937_64& gen) {
  if (n < 1) throw std::domain_error("split: need at least one node");
  if (!(train_fraction > 0.0) || !(train_fraction < 1.0)) {
    throw std::domain_error("split: train_fraction must lie in (0, 1)");
  }
  std::size_t rows = ds.x.size();
  std::vector<std::size_t> idx(rows);
  for (std::size_t i = 0; i < rows; ++i) idx[i] = i;
  for (std::size_t i = rows; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(gen() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  auto train_count = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(rows)));
  if (train_count < static_cast<std::size_t>(n)) {
    throw std::domain_error("split: fewer training rows than nodes");
  }
  SplitResult out;
  out.partitions.assign(static_cast<std::size_t>(n), {});
  for (std::size_t i = 0; i < train_count; ++i) {
    out.partitions[i % static_cast<std::size_t>(n)].push_back(idx[i]);
  }
  out.test_indices.assign(idx.begin() + static_cast<std::ptrdiff_t>(train_count),
                          idx.end());
  return out;
}

}  // namespace skipring
