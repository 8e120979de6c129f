// Copyright 2026 The skipring Authors
// SPDX-License-Identifier: Apache-2.0
//
// Python bindings over the analytical core: latency models and timeout
// search, schedule mixing, convergence and privacy bounds, plus the CSV
// commands for scripted experiment drivers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "skipring/commands.hpp"
#include "skipring/config.hpp"
#include "skipring/convergence.hpp"
#include "skipring/latency.hpp"
#include "skipring/privacy.hpp"
#include "skipring/schedule.hpp"

namespace py = pybind11;
using namespace skipring;

namespace {

LatencyModel make_model(const std::string& kind, double a, double b) {
  if (kind == "exponential") return LatencyModel::Exponential(a);
  if (kind == "gamma") return LatencyModel::Gamma(a, b);
  if (kind == "pareto2") return LatencyModel::ParetoII(a, b);
  throw std::invalid_argument(
      "kind must be exponential, gamma, or pareto2");
}

SchemeKind make_scheme(const std::string& name) {
  if (name == "SkipRing") return SchemeKind::kSkipRing;
  if (name == "SkipRandRing") return SchemeKind::kSkipRandRing;
  throw std::invalid_argument("scheme must be SkipRing or SkipRandRing");
}

}  // namespace

PYBIND11_MODULE(_skipring, m) {
  m.doc() =
      "Straggler-resilient private ring training: analytical bounds and "
      "timeout search";

  py::class_<LatencyModel>(m, "LatencyModel")
      .def(py::init(&make_model), py::arg("kind"), py::arg("a"),
           py::arg("b") = 1.0)
      .def_property_readonly("kind",
                             [](const LatencyModel& m_) { return m_.name(); })
      .def("mean", &LatencyModel::mean)
      .def("cdf", [](const LatencyModel& m_, double t) { return cdf(m_, t); })
      .def("quantile",
           [](const LatencyModel& m_, double p) { return quantile(m_, p); },
           py::arg("p"))
      .def("truncated_mean", [](const LatencyModel& m_, double t) {
        return truncated_mean(m_, t);
      });

  py::class_<TimeoutChoice>(m, "TimeoutChoice")
      .def_readonly("t_skip", &TimeoutChoice::t_skip)
      .def_readonly("p", &TimeoutChoice::p)
      .def_readonly("objective", &TimeoutChoice::objective);

  m.def("optimal_t_skip", &optimal_t_skip, py::arg("model"), py::arg("chi"));

  m.def(
      "expected_total_latency",
      [](const LatencyModel& model, double t_skip, double chi,
         long long h_max) {
        return expected_total_latency(
            model, SkipPolicy::FromTimeout(model, t_skip, chi), h_max);
      },
      py::arg("model"), py::arg("t_skip"), py::arg("chi"), py::arg("h_max"));

  m.def(
      "lambda1",
      [](const std::string& scheme, int n, double p) {
        return lambda1(make_scheme(scheme), n, p);
      },
      py::arg("scheme"), py::arg("n"), py::arg("p"));

  m.def(
      "mixing_bound",
      [](const std::string& scheme, int n, double p, long long h) {
        return mixing_bound(make_scheme(scheme), n, p, h);
      },
      py::arg("scheme"), py::arg("n"), py::arg("p"), py::arg("h"));

  py::class_<ConvergenceParams>(m, "ConvergenceParams")
      .def(py::init<>())
      .def_readwrite("d_w", &ConvergenceParams::d_w)
      .def_readwrite("k", &ConvergenceParams::k)
      .def_readwrite("d", &ConvergenceParams::d)
      .def_readwrite("sigma", &ConvergenceParams::sigma)
      .def_readwrite("zeta", &ConvergenceParams::zeta)
      .def_readwrite("n", &ConvergenceParams::n)
      .def_readwrite("p", &ConvergenceParams::p)
      .def_readwrite("h_max", &ConvergenceParams::h_max)
      .def_readwrite("lambda1", &ConvergenceParams::lambda1);

  m.def("e_h", &e_h, py::arg("params"), py::arg("h"));
  m.def("error_bound", &error_bound, py::arg("params"));

  py::class_<PrivacyParams>(m, "PrivacyParams")
      .def(py::init<>())
      .def_readwrite("epsilon", &PrivacyParams::epsilon)
      .def_readwrite("delta", &PrivacyParams::delta)
      .def_readwrite("delta_prime", &PrivacyParams::delta_prime)
      .def_readwrite("k", &PrivacyParams::k)
      .def_readwrite("n", &PrivacyParams::n)
      .def_readwrite("p", &PrivacyParams::p)
      .def_readwrite("h_max", &PrivacyParams::h_max);

  py::class_<PrivacyBound>(m, "PrivacyBound")
      .def_readonly("sigma", &PrivacyBound::sigma)
      .def_readonly("h_tilde", &PrivacyBound::h_tilde)
      .def_readonly("alpha", &PrivacyBound::alpha)
      .def_readonly("a", &PrivacyBound::a)
      .def_readonly("epsilon_skip", &PrivacyBound::epsilon_skip)
      .def_readonly("total_delta", &PrivacyBound::total_delta);

  m.def("calibrate_sigma", &calibrate_sigma, py::arg("epsilon"),
        py::arg("delta"), py::arg("k"));
  m.def("h_tilde", &h_tilde, py::arg("h_max"), py::arg("p"), py::arg("n"),
        py::arg("delta_prime"));
  m.def("gamma_rh", &gamma_rh, py::arg("r"), py::arg("h"));
  m.def("epsilon_skip_ring", &epsilon_skip_ring, py::arg("params"));
  m.def("epsilon_skip_rand_ring", &epsilon_skip_rand_ring, py::arg("params"));
  m.def("rdp_to_dp", &rdp_to_dp, py::arg("alpha"), py::arg("eps_rdp"),
        py::arg("delta"));
  m.def("compose_rdp", &compose_rdp, py::arg("eps_rdp_list"));

  m.def("load_config", &load_config, py::arg("path"));
  py::class_<RunConfig>(m, "RunConfig")
      .def_property_readonly(
          "fingerprint",
          [](const RunConfig& cfg) { return config_fingerprint(cfg); });
  m.def(
      "run_bounds",
      [](const std::string& config_path, const std::string& out_dir,
         std::optional<std::uint64_t> seed) {
        RunConfig cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed) cfg.seeds = {*seed};
        return cmd_bounds(cfg, cfg.seeds.front());
      },
      py::arg("config_path"), py::arg("out_dir") = std::string(),
      py::arg("seed") = std::nullopt);
  m.def(
      "run_train",
      [](const std::string& config_path, const std::string& out_dir,
         std::optional<std::uint64_t> seed) {
        RunConfig cfg = load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        return cmd_train(cfg, seed);
      },
      py::arg("config_path"), py::arg("out_dir") = std::string(),
      py::arg("seed") = std::nullopt);
}
