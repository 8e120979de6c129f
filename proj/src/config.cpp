// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0

#include "skipring/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace skipring {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) {
  throw std::runtime_error("config: " + msg);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail("unknown key '" + it.key() + "' in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& where,
                      const std::string& key) {
  if (!obj.contains(key)) fail(where + " is missing '" + key + "'");
  if (!obj[key].is_number()) fail(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& where,
                 const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

LatencyModel parse_latency(const json& j) {
  if (!j.is_object()) fail("'latency' must be an object");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    fail("latency.kind must be a string");
  }
  std::string kind = j["kind"].get<std::string>();
  if (kind == "exponential") {
    check_keys(j, "latency", {"kind", "mean"});
    return LatencyModel::Exponential(require_number(j, "latency", "mean"));
  }
  if (kind == "gamma") {
    check_keys(j, "latency", {"kind", "shape", "scale"});
    return LatencyModel::Gamma(require_number(j, "latency", "shape"),
                               require_number(j, "latency", "scale"));
  }
  if (kind == "pareto2") {
    check_keys(j, "latency", {"kind", "shape", "scale"});
    return LatencyModel::ParetoII(require_number(j, "latency", "shape"),
                                  require_number(j, "latency", "scale"));
  }
  fail("latency.kind must be exponential, gamma, or pareto2");
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail("invalid JSON in " + path + ": " + e.what());
  }
  if (!j.is_object()) fail("top level must be an object");
  check_keys(j, "config",
             {"scheme", "n", "latency", "chi", "policy", "privacy", "sgd",
              "dataset", "seeds", "h_grid", "h_max", "out_dir",
              "attest_zeta_smoothness"});

  RunConfig cfg;

  if (j.contains("scheme")) {
    std::string s = j["scheme"].get<std::string>();
    if (s == "SkipRing") {
      cfg.scheme = SchemeKind::kSkipRing;
    } else if (s == "SkipRandRing") {
      cfg.scheme = SchemeKind::kSkipRandRing;
    } else {
      fail("scheme must be SkipRing or SkipRandRing");
    }
  }

  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) fail("n must be an integer");
    cfg.n = j["n"].get<int>();
    if (cfg.n < 2) fail("n must be >= 2");
  }

  if (j.contains("latency")) cfg.latency = parse_latency(j["latency"]);
  cfg.chi = number_or(j, "config", "chi", cfg.chi);
  if (cfg.chi < 0.0) fail("chi must be >= 0");

  if (!j.contains("policy") || !j["policy"].is_object()) {
    fail("'policy' object is required");
  }
  const json& pol = j["policy"];
  check_keys(pol, "policy", {"t_skip", "p"});
  bool has_t = pol.contains("t_skip");
  bool has_p = pol.contains("p");
  if (has_t == has_p) {
    fail("policy must set exactly one of 't_skip' and 'p'");
  }
  if (has_t) {
    if (pol["t_skip"].is_string()) {
      if (pol["t_skip"].get<std::string>() != "inf") {
        fail("policy.t_skip must be a number or \"inf\"");
      }
      cfg.policy_t_skip = std::numeric_limits<double>::infinity();
    } else if (pol["t_skip"].is_number()) {
      cfg.policy_t_skip = pol["t_skip"].get<double>();
      if (*cfg.policy_t_skip < 0.0) fail("policy.t_skip must be >= 0");
    } else {
      fail("policy.t_skip must be a number or \"inf\"");
    }
  } else {
    cfg.policy_p = require_number(pol, "policy", "p");
    if (!(*cfg.policy_p >= 0.0) || !(*cfg.policy_p < 1.0)) {
      fail("policy.p must lie in [0, 1)");
    }
  }

  if (j.contains("privacy")) {
    const json& pr = j["privacy"];
    check_keys(pr, "privacy", {"epsilon", "delta", "delta_prime", "k"});
    cfg.epsilon = number_or(pr, "privacy", "epsilon", cfg.epsilon);
    cfg.delta = number_or(pr, "privacy", "delta", cfg.delta);
    cfg.delta_prime = number_or(pr, "privacy", "delta_prime", cfg.delta_prime);
    cfg.k = number_or(pr, "privacy", "k", cfg.k);
  }

  if (j.contains("sgd")) {
    const json& sg = j["sgd"];
    check_keys(sg, "sgd", {"zeta", "d_w", "batch_size", "d", "sigma"});
    cfg.zeta = number_or(sg, "sgd", "zeta", cfg.zeta);
    cfg.d_w = number_or(sg, "sgd", "d_w", cfg.d_w);
    if (sg.contains("sigma")) {
      double s = require_number(sg, "sgd", "sigma");
      if (s < 0.0) fail("sgd.sigma must be >= 0");
      cfg.sigma_override = s;
    }
    if (sg.contains("batch_size")) {
      if (!sg["batch_size"].is_number_integer()) {
        fail("sgd.batch_size must be an integer");
      }
      auto b = sg["batch_size"].get<long long>();
      if (b <= 0) fail("sgd.batch_size must be > 0");
      cfg.batch_size = static_cast<std::size_t>(b);
    }
    if (sg.contains("d")) {
      if (!sg["d"].is_number_integer()) fail("sgd.d must be an integer");
      cfg.d = sg["d"].get<int>();
      if (cfg.d <= 0) fail("sgd.d must be > 0");
    }
  }

  if (j.contains("dataset")) {
    const json& dsj = j["dataset"];
    check_keys(dsj, "dataset",
               {"path", "label_column", "threshold", "test_fraction"});
    if (dsj.contains("path")) cfg.dataset_path = dsj["path"].get<std::string>();
    if (dsj.contains("label_column")) {
      cfg.label_column = dsj["label_column"].get<std::string>();
    }
    if (dsj.contains("threshold")) {
      if (dsj["threshold"].is_string()) {
        if (dsj["threshold"].get<std::string>() != "median") {
          fail("dataset.threshold must be a number or \"median\"");
        }
        cfg.binarize.kind = BinarizeRule::Kind::kMedian;
      } else if (dsj["threshold"].is_number()) {
        cfg.binarize.kind = BinarizeRule::Kind::kThreshold;
        cfg.binarize.threshold = dsj["threshold"].get<double>();
      } else {
        fail("dataset.threshold must be a number or \"median\"");
      }
    }
    if (dsj.contains("test_fraction")) {
      cfg.test_fraction = require_number(dsj, "dataset", "test_fraction");
      if (!(cfg.test_fraction > 0.0) || !(cfg.test_fraction < 1.0)) {
        fail("dataset.test_fraction must lie in (0, 1)");
      }
    }
  }

  if (j.contains("seeds")) {
    if (!j["seeds"].is_array() || j["seeds"].empty()) {
      fail("seeds must be a nonempty array of integers");
    }
    cfg.seeds.clear();
    for (const auto& s : j["seeds"]) {
      if (!s.is_number_integer()) fail("seeds entries must be integers");
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
  }

  if (j.contains("h_grid")) {
    if (!j["h_grid"].is_array()) fail("h_grid must be an array of integers");
    for (const auto& h : j["h_grid"]) {
      if (!h.is_number_integer()) fail("h_grid entries must be integers");
      long long v = h.get<long long>();
      if (v <= 0) fail("h_grid entries must be > 0");
      cfg.h_grid.push_back(v);
    }
  }

  if (j.contains("h_max")) {
    if (!j["h_max"].is_number_integer()) fail("h_max must be an integer");
    cfg.h_max = j["h_max"].get<long long>();
    if (cfg.h_max <= 0) fail("h_max must be > 0");
  }
  if (cfg.h_max > 0 && cfg.h_max % cfg.n != 0) {
    fail("h_max must be a multiple of n");
  }
  for (long long h : cfg.h_grid) {
    if (h % cfg.n != 0) fail("h_grid entries must be multiples of n");
  }

  if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("attest_zeta_smoothness")) {
    if (!j["attest_zeta_smoothness"].is_boolean()) {
      fail("attest_zeta_smoothness must be a boolean");
    }
    cfg.attest_zeta_smoothness = j["attest_zeta_smoothness"].get<bool>();
  }
  if (!cfg.attest_zeta_smoothness) {
    fail(
        "attest_zeta_smoothness must be true: the analytical bounds assume "
        "the step scale is matched to the loss smoothness");
  }
  return cfg;
}

std::string config_fingerprint(const RunConfig& cfg) {
  json j;
  j["scheme"] =
      cfg.scheme == SchemeKind::kSkipRing ? "SkipRing" : "SkipRandRing";
  j["n"] = cfg.n;
  json lat;
  lat["kind"] = cfg.latency.name();
  if (cfg.latency.kind == LatencyModel::Kind::kExponential) {
    lat["mean"] = cfg.latency.a;
  } else {
    lat["shape"] = cfg.latency.a;
    lat["scale"] = cfg.latency.b;
  }
  j["latency"] = lat;
  j["chi"] = cfg.chi;
  if (cfg.policy_t_skip) {
    if (std::isinf(*cfg.policy_t_skip)) {
      j["policy"]["t_skip"] = "inf";
    } else {
      j["policy"]["t_skip"] = *cfg.policy_t_skip;
    }
  } else {
    j["policy"]["p"] = *cfg.policy_p;
  }
  j["privacy"] = {{"epsilon", cfg.epsilon},
                  {"delta", cfg.delta},
                  {"delta_prime", cfg.delta_prime},
                  {"k", cfg.k}};
  j["sgd"] = {{"zeta", cfg.zeta},
              {"d_w", cfg.d_w},
              {"batch_size", cfg.batch_size},
              {"d", cfg.d}};
  if (cfg.sigma_override) j["sgd"]["sigma"] = *cfg.sigma_override;
  if (!cfg.dataset_path.empty()) {
    json dsj;
    dsj["path"] = cfg.dataset_path;
    dsj["label_column"] = cfg.label_column;
    if (cfg.binarize.kind == BinarizeRule::Kind::kMedian) {
      dsj["threshold"] = "median";
    } else if (cfg.binarize.kind == BinarizeRule::Kind::kThreshold) {
      dsj["threshold"] = cfg.binarize.threshold;
    }
    dsj["test_fraction"] = cfg.test_fraction;
    j["dataset"] = dsj;
  }
  j["seeds"] = cfg.seeds;
  if (!cfg.h_grid.empty()) j["h_grid"] = cfg.h_grid;
  if (cfg.h_max > 0) j["h_max"] = cfg.h_max;
  j["out_dir"] = cfg.out_dir;
  // nlohmann's object is ordered-map backed, so dump() is key-sorted and
  // stable across runs; the provenance line relies on that.
  return j.dump();
}

SkipPolicy resolve_policy(const RunConfig& cfg) {
  if (cfg.policy_t_skip) {
    return SkipPolicy::FromTimeout(cfg.latency, *cfg.policy_t_skip, cfg.chi);
  }
  if (cfg.policy_p) {
    return SkipPolicy::FromSkipProbability(cfg.latency, *cfg.policy_p,
                                           cfg.chi);
  }
  throw std::runtime_error("config: policy has neither t_skip nor p");
}

}  // namespace skipring
