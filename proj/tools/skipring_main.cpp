// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: analytical trade-off curves, optimal timeout
// search, ring training simulation, and parameter sweeps, all emitted as
// CSV with a provenance comment line.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skipring/commands.hpp"
#include "skipring/config.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir,
                  "output directory (overrides config out_dir)");
  cmd->add_option("--seed", args.seed,
                  "master seed (overrides config seeds with this one)");
}

skipring::RunConfig resolve(const CommonArgs& args) {
  skipring::RunConfig cfg = skipring::load_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.seed) cfg.seeds = {*args.seed};
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Straggler-resilient private ring training: bounds and simulation"};
  app.require_subcommand(1);

  CommonArgs bounds_args;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Error-bound and privacy curves over the h_max grid");
  add_common(bounds, bounds_args);

  CommonArgs opt_args;
  CLI::App* opt = app.add_subcommand(
      "optimal-tskip", "Timeout minimizing expected time per update");
  add_common(opt, opt_args);

  CommonArgs train_args;
  CLI::App* train = app.add_subcommand(
      "train", "Simulate ring training on the configured dataset");
  add_common(train, train_args);

  CommonArgs sweep_args;
  std::string axis;
  std::vector<double> values;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Repeat the bounds command across one parameter axis");
  add_common(sweep, sweep_args);
  sweep->add_option("--axis", axis, "config field to vary")->required();
  sweep->add_option("--values", values, "values for the axis")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bounds->parsed()) {
      skipring::RunConfig cfg = resolve(bounds_args);
      return skipring::cmd_bounds(cfg, cfg.seeds.front());
    }
    if (opt->parsed()) {
      skipring::RunConfig cfg = resolve(opt_args);
      return skipring::cmd_optimal_tskip(cfg, cfg.seeds.front());
    }
    if (train->parsed()) {
      skipring::RunConfig cfg = resolve(train_args);
      return skipring::cmd_train(cfg, train_args.seed);
    }
    if (sweep->parsed()) {
      skipring::RunConfig cfg = resolve(sweep_args);
      return skipring::cmd_sweep(cfg, axis, values, cfg.seeds.front());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
