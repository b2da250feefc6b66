# SPDX-License-Identifier: Apache-2.0
import json
import math

import numpy as np
import pytest

import smpde


def test_grid_and_kernel():
    g = smpde.GridSpec(-10.0, 10.0, 1024, 1.0, 64)
    assert g.dx == pytest.approx(20.0 / 1024)
    x = g.x
    assert x.shape == (1024,)
    p = smpde.heat_kernel(0.5, x)
    assert np.sum(p) * g.dx == pytest.approx(1.0, abs=1e-8)
    assert smpde.heat_kernel(1.0, 0.0) == pytest.approx(1.0 / math.sqrt(4.0 * math.pi))
    with pytest.raises(smpde.DomainError):
        smpde.GridSpec(nx=1000)


def test_measure_and_theta_linearity():
    g = smpde.GridSpec(-8.0, 8.0, 256, 1.0, 32)
    s = smpde.sample_measure(g, "wiener", seed=3)
    assert s.increments.shape == (256,)
    sigma = smpde.SigmaSpec.constant(1.0)
    th = smpde.theta_field(s, sigma)
    assert th.shape == (33, 256)
    assert np.all(th[0] == 0.0)
    doubled = smpde.measure_from_increments(g, list(2.0 * s.increments))
    assert np.max(np.abs(smpde.theta_field(doubled, sigma) - 2.0 * th)) < 1e-12


def test_heat_solve_matches_closed_form():
    g = smpde.GridSpec(-10.0, 10.0, 512, 1.0, 32)
    s = smpde.sample_measure(g, "wiener", seed=0)
    u, rep = smpde.solve(smpde.CoefficientSet.heat(), s)
    assert rep["iterations"] <= 2
    exact = smpde.heat_kernel(2.0, g.x)
    assert np.max(np.abs(u[-1] - exact)) / np.max(exact) < 1e-3


def test_pi_n_and_seeds():
    v = np.array([3.0, 4.0])
    out = smpde.project_pi_n(v, 1.0, 1.0)
    assert np.linalg.norm(out) == pytest.approx(1.0)
    assert np.array_equal(smpde.project_pi_n(out, 1.0, 1.0), out)
    assert smpde.seed_split(1, 0) != smpde.seed_split(1, 1)
    value, terms = smpde.gronwall_series(1.0)
    assert value > 0 and terms > 0
    with pytest.raises(smpde.DomainError):
        smpde.gronwall_series(0.0)


def test_sigma_bar():
    s = smpde.SigmaSpec.harmonic(offset=2.0, amplitude=1.0, period=1.0, c_sigma=3.0, l_sigma=3.0)
    bar = smpde.sigma_bar(s)
    assert bar.time_independent
    assert bar(0.3, 0.5) == pytest.approx(2.0 * math.exp(-0.25))


def test_run_config(tmp_path):
    cfg = tmp_path / "heat.yaml"
    cfg.write_text(
        "command: solve\n"
        "grid: {x_min: -10.0, x_max: 10.0, nx: 256, t_max: 1.0, nt: 16}\n"
        "coefficients: {preset: heat}\n"
    )
    res = smpde.run(str(cfg), out=str(tmp_path / "out"), threads=1)
    assert res["exit_code"] == 0, res["message"]
    manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
    paths = {a["path"] for a in manifest["artifacts"]}
    assert {"report.json", "solution_slices.csv", "solution.bin"} <= paths
    u = smpde.load_space_time(str(tmp_path / "out" / "solution.bin"))
    assert u.shape == (17, 256)

    bad = tmp_path / "bad.yaml"
    bad.write_text("command: besov-check\nbesov_check: {alpha: 0.4}\n")
    res = smpde.run(str(bad), out=str(tmp_path / "bad"))
    assert res["exit_code"] == 2
    assert "(1/2, 1)" in res["message"]

    text = smpde.serialize_config(cfg.read_text())
    assert smpde.serialize_config(text) == text
