// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "skipring/convergence.hpp"
#include "skipring/data.hpp"
#include "skipring/privacy.hpp"
#include "skipring/rng.hpp"
#include "skipring/schedule.hpp"
#include "skipring/sgd.hpp"

namespace skipring {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::ofstream open_csv(const std::string& out_dir, const std::string& name,
                       const RunConfig& cfg, std::uint64_t master_seed) {
  fs::create_directories(out_dir);
  fs::path path = fs::path(out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << "# config=" << config_fingerprint(cfg)
      << " master_seed=" << master_seed << "\n";
  return out;
}

double resolve_sigma(const RunConfig& cfg) {
  if (cfg.sigma_override) return *cfg.sigma_override;
  return calibrate_sigma(cfg.epsilon, cfg.delta, cfg.k);
}

PrivacyBound scheme_privacy(const RunConfig& cfg, double p, long long h) {
  PrivacyParams pp;
  pp.epsilon = cfg.epsilon;
  pp.delta = cfg.delta;
  pp.delta_prime = cfg.delta_prime;
  pp.k = cfg.k;
  pp.n = cfg.n;
  pp.p = p;
  pp.h_max = h;
  return cfg.scheme == SchemeKind::kSkipRing ? epsilon_skip_ring(pp)
                                             : epsilon_skip_rand_ring(pp);
}

// Runs fn(i) for i in [0, count) on a small pool; results land wherever fn
// writes them, output files are written by the caller afterwards so bytes
// never depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, const Fn& fn) {
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

int cmd_bounds(const RunConfig& cfg, std::uint64_t master_seed) {
  std::vector<long long> grid = cfg.h_grid;
  if (grid.empty()) {
    if (cfg.h_max <= 0) {
      throw std::runtime_error("bounds: set h_max or h_grid");
    }
    grid.push_back(cfg.h_max);
  }

  SkipPolicy policy = resolve_policy(cfg);
  double sigma = resolve_sigma(cfg);
  double lam = lambda1(cfg.scheme, cfg.n, policy.p);

  struct Row {
    long long h;
    double latency, bound, eps;
  };
  std::vector<Row> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    long long h = grid[i];
    ConvergenceParams cp;
    cp.d_w = cfg.d_w;
    cp.k = cfg.k;
    cp.d = cfg.d;
    cp.sigma = sigma;
    cp.zeta = cfg.zeta;
    cp.n = cfg.n;
    cp.p = policy.p;
    cp.h_max = h;
    cp.lambda1 = lam;
    rows[i] = {h, expected_total_latency(cfg.latency, policy, h),
               error_bound(cp), scheme_privacy(cfg, policy.p, h).epsilon_skip};
  });

  std::ofstream out = open_csv(cfg.out_dir, "bounds.csv", cfg, master_seed);
  out << "h_max,avg_latency_s,error_bound,epsilon_skip\n";
  for (const Row& r : rows) {
    out << r.h << ',' << fmt(r.latency) << ',' << fmt(r.bound) << ','
        << fmt(r.eps) << "\n";
  }
  return 0;
}

int cmd_optimal_tskip(const RunConfig& cfg, std::uint64_t master_seed) {
  TimeoutChoice choice = optimal_t_skip(cfg.latency, cfg.chi);
  std::ofstream out =
      open_csv(cfg.out_dir, "optimal_tskip.csv", cfg, master_seed);
  out << "model,t_skip,p,objective\n";
  out << cfg.latency.name() << ',' << fmt(choice.t_skip) << ','
      << fmt(choice.p) << ',' << fmt(choice.objective) << "\n";
  return 0;
}

int cmd_train(const RunConfig& cfg,
              std::optional<std::uint64_t> seed_override) {
  if (cfg.dataset_path.empty()) {
    throw std::runtime_error("train: config has no dataset.path");
  }
  if (cfg.h_max <= 0) throw std::runtime_error("train: set h_max");

  LoadReport report;
  Dataset ds = load_csv(cfg.dataset_path, cfg.label_column, cfg.binarize,
                        ',', &report);
  preprocess(ds, &report);
  std::fprintf(stderr,
               "dataset: %zu rows, %zu features, %zu positive / %zu negative"
               " (threshold %s)\n",
               ds.x.size(), ds.x.empty() ? 0 : ds.x[0].size(),
               report.positive_count, report.negative_count,
               fmt(report.label_threshold).c_str());
  for (const auto& w : report.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }

  std::vector<std::uint64_t> seeds =
      seed_override ? std::vector<std::uint64_t>{*seed_override} : cfg.seeds;

  SkipPolicy policy = resolve_policy(cfg);
  double sigma = resolve_sigma(cfg);
  ProjectionDomain domain{cfg.d_w / 2.0};

  std::vector<RunRecord> records(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    RngStreams rng(seeds[i]);
    SplitResult sp = split(ds, cfg.n, 1.0 - cfg.test_fraction, rng.schedule);
    VisitPlan plan = build_plan(cfg.scheme, cfg.n, cfg.h_max, rng.schedule);
    RunOptions opts;
    opts.batch_size = cfg.batch_size;
    opts.sigma = sigma;
    records[i] = run(plan, ds, sp.partitions, domain, policy, cfg.latency,
                     opts, cfg.zeta, ds, sp.test_indices, rng);
  });

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::ofstream out =
        open_csv(cfg.out_dir, "train_seed" + std::to_string(seeds[i]) + ".csv",
                 cfg, seeds[i]);
    out << "hop,updates,cumulative_latency_s,test_error\n";
    for (const RunRecordRow& r : records[i].rows) {
      out << r.hop << ',' << r.updates << ',' << fmt(r.cumulative_latency_s)
          << ',' << fmt(r.test_error) << "\n";
    }
  }

  // Aggregate as a staircase over 50 shared latency buckets: per seed the
  // last record at or before each bucket edge (hop 0 guarantees one).
  constexpr int kBuckets = 50;
  double l_max = 0.0;
  for (const RunRecord& r : records) {
    l_max = std::max(l_max, r.total_latency);
  }
  std::ofstream agg =
      open_csv(cfg.out_dir, "train_aggregate.csv", cfg, seeds[0]);
  agg << "latency_s,test_error_mean,test_error_std,n_seeds\n";
  for (int b = 1; b <= kBuckets; ++b) {
    double edge = l_max * static_cast<double>(b) / kBuckets;
    double sum = 0.0, sum_sq = 0.0;
    for (const RunRecord& r : records) {
      double err = r.rows.front().test_error;
      for (const RunRecordRow& row : r.rows) {
        if (row.cumulative_latency_s <= edge) {
          err = row.test_error;
        } else {
          break;
        }
      }
      sum += err;
      sum_sq += err * err;
    }
    auto ns = static_cast<double>(records.size());
    double mean = sum / ns;
    double var = records.size() > 1
                     ? std::max(0.0, (sum_sq - ns * mean * mean) / (ns - 1.0))
                     : 0.0;
    agg << fmt(edge) << ',' << fmt(mean) << ',' << fmt(std::sqrt(var)) << ','
        << records.size() << "\n";
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::uint64_t master_seed) {
  if (values.empty()) throw std::runtime_error("sweep: no values given");

  auto apply = [&](RunConfig& cell, double v) {
    auto as_int = [&](const char* what) {
      auto iv = static_cast<long long>(std::llround(v));
      if (static_cast<double>(iv) != v) {
        throw std::runtime_error(std::string("sweep: ") + what +
                                 " requires integer values");
      }
      return iv;
    };
    if (axis == "p") {
      cell.policy_p = v;
      cell.policy_t_skip.reset();
    } else if (axis == "t_skip") {
      cell.policy_t_skip = v;
      cell.policy_p.reset();
    } else if (axis == "chi") {
      cell.chi = v;
    } else if (axis == "epsilon") {
      cell.epsilon = v;
    } else if (axis == "delta") {
      cell.delta = v;
    } else if (axis == "delta_prime") {
      cell.delta_prime = v;
    } else if (axis == "k") {
      cell.k = v;
    } else if (axis == "zeta") {
      cell.zeta = v;
    } else if (axis == "d_w") {
      cell.d_w = v;
    } else if (axis == "n") {
      cell.n = static_cast<int>(as_int("n"));
    } else if (axis == "h_max") {
      cell.h_max = as_int("h_max");
      cell.h_grid.clear();
    } else {
      throw std::runtime_error("sweep: unknown axis '" + axis + "'");
    }
    if (cell.h_max > 0 && cell.h_max % cell.n != 0) {
      throw std::runtime_error("sweep: h_max must stay a multiple of n");
    }
    for (long long h : cell.h_grid) {
      if (h % cell.n != 0) {
        throw std::runtime_error(
            "sweep: h_grid entries must stay multiples of n");
      }
    }
  };

  struct Cell {
    double value;
    std::string dir;
  };
  std::vector<Cell> cells(values.size());
  parallel_for(values.size(), [&](std::size_t i) {
    RunConfig cell = cfg;
    apply(cell, values[i]);
    std::string leaf = axis + "=" + fmt(values[i]);
    cell.out_dir = (fs::path(cfg.out_dir) / leaf).string();
    cmd_bounds(cell, master_seed);
    cells[i] = {values[i], leaf};
  });

  std::ofstream index =
      open_csv(cfg.out_dir, "sweep_index.csv", cfg, master_seed);
  index << "axis,value,path\n";
  for (const Cell& c : cells) {
    index << axis << ',' << fmt(c.value) << ',' << c.dir << "/bounds.csv\n";
  }
  return 0;
}

}  // namespace skipring
