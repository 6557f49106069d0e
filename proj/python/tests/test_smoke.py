import json
import math
import os
import subprocess

import numpy as np
import pytest

import becimp


@pytest.fixture(scope="module")
def grid():
    return becimp.Grid(256, 10.0)


def test_grid(grid):
    assert grid.n_points == 256
    assert grid.dz == pytest.approx(20.0 / 256)
    assert grid.z[grid.n_points // 2] == 0.0
    assert grid.mirror(0) == 0
    with pytest.raises(ValueError):
        becimp.Grid(7, 1.0)


def test_seed_states(grid):
    psi = becimp.trial_impurity(grid, 0.808)
    assert becimp.norm2(grid, psi) == pytest.approx(1.0, rel=1e-10)
    assert becimp.moment(grid, psi, 2) == pytest.approx(1.5 * 0.808**2, rel=1e-9)
    assert np.max(np.abs(becimp.project_odd(grid, psi) - psi)) < 1e-15
    assert becimp.effective_mass_ratio(grid, psi, 0.808) == pytest.approx(1 / 3, rel=1e-9)


def test_params():
    p = becimp.ModelParams(G_B=4.71, g_IB=80.0, alpha=0.808, G_BI_ratio=0.005)
    assert p.G_IB == 80.0
    assert p.G_BI == pytest.approx(0.4)
    p.G_BI_ratio = None
    assert p.G_BI == pytest.approx(80.0 * 200)


def test_relax_oscillator(grid):
    p = becimp.ModelParams(G_B=0.0)
    r = becimp.relax(p, grid, dtau=1e-3, tol=1e-11)
    assert r["converged"]
    assert r["E_B"] == pytest.approx(0.5, abs=1e-6)
    assert r["E_I"] == pytest.approx(1.5, abs=1e-6)
    assert r["density_B"].shape == (256,)


def test_zeno_decay(grid):
    tau, E = becimp.zeno_decay(grid, dtau=1e-3, tau_max=60.0)
    assert E[0] == pytest.approx(1.5, abs=1e-6)
    assert E[-1] == pytest.approx(0.5, abs=1e-5)
    assert np.all(np.diff(E) <= 1e-12)


def test_frequency_and_width():
    t = np.arange(0, 30, 0.01)
    assert becimp.dominant_frequency(t, np.cos(2 * t)) == pytest.approx(2.0, rel=1e-3)
    closed, numeric, worst = becimp.variational_width(1.2 * 0.808, 0.808, t[:2001])
    assert worst < 1e-6
    assert closed[0] == pytest.approx(1.2 * 0.808)


def test_analytics():
    rep = becimp.analyze("rounded_hbar")
    assert rep["l_z_bohr"][0] == pytest.approx(28742.3, rel=1e-3)
    assert rep["G_B"][0] == pytest.approx(4.71, rel=0.01)
    mu, peak, radius = becimp.thomas_fermi(100.0)
    assert peak == pytest.approx(mu / 100.0)
    assert radius == pytest.approx(math.sqrt(2 * mu))


def test_run_scenario(tmp_path):
    out = tmp_path / "relax"
    rc, log = becimp.run_scenario(
        "relax",
        {
            "grid.n_points": "128",
            "grid.half_width": "8",
            "relax.dtau": "1e-3",
            "model.g_IB": "2",
            "output.dir": str(out),
        },
    )
    assert rc == 0, log
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["scenario"] == "relax"
    assert (out / "fig1_density_cut.csv").read_text().startswith("z,n_B,n_I\n")
    with pytest.raises(ValueError):
        becimp.run_scenario("relax", {"bogus.key": "1", "output.dir": str(out)})


def test_matrix_reader(tmp_path):
    out = tmp_path / "tof"
    rc, log = becimp.run_scenario(
        "tof",
        {
            "grid.n_points": "128",
            "grid.half_width": "12",
            "relax.dtau": "1e-3",
            "evolve.t_final": "0.5",
            "evolve.dt": "1e-3",
            "evolve.snapshot_stride": "100",
            "output.dir": str(out),
        },
    )
    assert rc == 0, log
    m, dz, dt = becimp.read_matrix(str(out / "density_B.bin"))
    assert m.shape == (6, 128)
    assert dz == pytest.approx(24 / 128)
    assert dt == pytest.approx(0.1)
    text = np.loadtxt(out / "density_B.csv", delimiter=",")
    assert np.max(np.abs(text - m)) <= 1e-15 * np.max(np.abs(m))


@pytest.mark.skipif("BECIMP_CLI" not in os.environ, reason="CLI path not given")
def test_cli_exit_codes(tmp_path):
    cli = os.environ["BECIMP_CLI"]
    bad = subprocess.run([cli, "relax", "--model.nonsense", "3", "--out", str(tmp_path / "x")])
    assert bad.returncode == 2
    ok = subprocess.run([cli, "analyze", "--out", str(tmp_path / "a")], capture_output=True)
    assert ok.returncode == 0
    report = json.loads((tmp_path / "a" / "analysis.json").read_text())
    assert "G_B" in json.dumps(report)
