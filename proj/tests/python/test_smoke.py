# Copyright 2026 The skipring Authors
# SPDX-License-Identifier: Apache-2.0

import json
import math

import pytest

import skipring as sk


def test_sigma_calibration():
    expected = math.sqrt(8.0 * math.log(1.25e6))
    assert sk.calibrate_sigma(1.0, 1e-6, 1.0) == pytest.approx(expected, rel=1e-12)


def test_latency_model_roundtrip():
    m = sk.LatencyModel("exponential", 1.0)
    assert m.mean() == pytest.approx(1.0)
    t = m.quantile(0.5)
    assert t == pytest.approx(math.log(2.0), rel=1e-9)
    assert 1.0 - m.cdf(t) == pytest.approx(0.5, rel=1e-9)
    with pytest.raises(ValueError):
        sk.LatencyModel("weibull", 1.0)


def test_optimal_t_skip_gamma():
    choice = sk.optimal_t_skip(sk.LatencyModel("gamma", 0.25, 1.0), 0.01)
    assert choice.t_skip == pytest.approx(0.004801755, rel=1e-4)
    assert choice.p == pytest.approx(0.709857, abs=1e-5)
    assert choice.objective == pytest.approx(0.047172, rel=1e-4)


def test_lambda1_matches_formula():
    n, p = 10, 0.5
    expected = (1 - p) / math.sqrt(1 + p * p - 2 * p * math.cos(2 * math.pi / n))
    assert sk.lambda1("SkipRing", n, p) == pytest.approx(expected, rel=1e-12)
    assert sk.lambda1("SkipRandRing", n, p) == 0.0


def test_bound_shrinks_with_more_hops():
    params = sk.ConvergenceParams()
    params.sigma = sk.calibrate_sigma(1.0, 1e-6, 1.0)
    params.p = 0.5
    params.lambda1 = sk.lambda1("SkipRing", 10, 0.5)
    params.h_max = 1000
    b1 = sk.error_bound(params)
    params.h_max = 10000
    b2 = sk.error_bound(params)
    assert 0 < b2 < b1


def test_privacy_bounds():
    pp = sk.PrivacyParams()
    pp.p = 0.5
    pp.h_max = 1000
    ring = sk.epsilon_skip_ring(pp)
    rand = sk.epsilon_skip_rand_ring(pp)
    assert ring.epsilon_skip > 0
    assert rand.epsilon_skip > 0
    assert rand.alpha > 1
    assert ring.h_tilde == sk.h_tilde(1000, 0.5, 10, 0.1)


def test_run_bounds_writes_csv(tmp_path):
    cfg = {
        "policy": {"p": 0.5},
        "h_grid": [100, 200],
        "out_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert sk.run_bounds(str(path)) == 0
    lines = (tmp_path / "out" / "bounds.csv").read_text().splitlines()
    assert lines[0].startswith("# config=")
    assert lines[1] == "h_max,avg_latency_s,error_bound,epsilon_skip"
    assert len(lines) == 4
