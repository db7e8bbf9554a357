import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from qigeo import DensityMatrix, bogoliubov_metric
from qigeo.cli import main
from qigeo.matrix_file import load, save
from qigeo.verify import CHECKS

from conftest import state


@pytest.fixture
def files(tmp_path):
    def write(name, M, kind="density"):
        path = tmp_path / name
        save(path, M, kind)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# --- divergence --------------------------------------------------------------------

def test_divergence_examples(capsys, files):
    a = files("a.json", np.diag([0.5, 0.5]))
    b = files("b.json", np.diag([0.75, 0.25]))
    assert run(capsys, "divergence", a, a) == (0, "0.000000000000\n", "")
    assert run(capsys, "divergence", a, b) == (0, "0.143841036226\n", "")


def test_divergence_rejects_non_positive(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 2, "kind": "density", "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]}))
    code, out, err = run(capsys, "divergence", str(path), str(path))
    assert code == 2 and out == ""
    assert "density matrix not strictly positive" in err


def test_bad_inputs_exit_2(capsys, files, tmp_path):
    h = files("h.json", np.diag([1.0, -1.0]), "hamiltonian")
    code, _, err = run(capsys, "divergence", h, h)
    assert code == 2 and "expected a matrix of kind density" in err
    code, _, err = run(capsys, "divergence", str(tmp_path / "nope.json"), h)
    assert code == 2 and "cannot read" in err
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "metric", h)[0] == 2


def test_out_option_before_or_after_subcommand(capsys, files, tmp_path):
    a = files("a.json", np.diag([0.5, 0.5]))
    b = files("b.json", np.diag([0.75, 0.25]))
    for argv in (["--out", str(tmp_path / "x.txt"), "divergence", a, b],
                 ["divergence", a, b, "--out", str(tmp_path / "y.txt")]):
        assert run(capsys, *argv) == (0, "", "")
    assert (tmp_path / "x.txt").read_text() == "0.143841036226\n"
    assert (tmp_path / "y.txt").read_bytes() == b"0.143841036226\n"


# --- metric -------------------------------------------------------------------------

def test_metric_methods_agree(capsys, files):
    r, s, t = state(1, 3), state(2, 3), state(3, 3)
    paths = [files(f"{k}.json", m) for k, m in zip("rst", (r, s, t))]
    values = {}
    for method in ("integral", "superop", "fd"):
        code, out, _ = run(capsys, "metric", *paths, "--method", method)
        assert code == 0
        values[method] = float(out)
    g = bogoliubov_metric(r, s, t)
    assert values["integral"] == pytest.approx(g, rel=1e-11)
    assert abs(values["integral"] - values["superop"]) < 1e-5
    assert abs(values["integral"] - values["fd"]) < 1e-5
    assert abs(values["superop"] - values["fd"]) < 1e-5


def test_metric_center_and_classical(capsys, files):
    r = files("r.json", np.diag([0.2, 0.3, 0.5]))
    s = files("s.json", np.diag([0.5, 0.25, 0.25]))
    t = files("t.json", np.diag([0.1, 0.6, 0.3]))
    code, out, _ = run(capsys, "metric", r, r, s)
    assert code == 0 and float(out) == 0.0
    code, out, _ = run(capsys, "metric", r, s, t)
    assert float(out) == pytest.approx(-0.028470500011014026, abs=1e-11)


def test_metric_rejects_bad_step(capsys, files):
    r = files("r.json", np.diag([0.2, 0.8]))
    code, _, err = run(capsys, "metric", r, r, r, "--method", "fd", "--step", "0.5")
    assert code == 2 and "step" in err


# --- geodesic -----------------------------------------------------------------------

def test_geodesic_exponential_table(capsys, files):
    r0, r1 = state(4, 3), state(5, 3)
    a, b = files("a.json", r0), files("b.json", r1)
    code, out, _ = run(capsys, "geodesic", a, b, "--grid", "21")
    assert code == 0
    assert "\r" not in out
    table = rows(out)
    assert len(table) == 21
    assert list(table[0]) == ["t", "eig0", "eig1", "eig2", "zeta", "zeta_dot", "zeta_ddot",
                              "D_t_0", "D_t_1", "chart_residual"]
    first, last = table[0], table[-1]
    np.testing.assert_allclose([float(first[f"eig{i}"]) for i in range(3)], r0.spectral.eigenvalues, atol=1e-11)
    np.testing.assert_allclose([float(last[f"eig{i}"]) for i in range(3)], r1.spectral.eigenvalues, atol=1e-11)
    assert float(first["zeta"]) == 0.0 and float(last["zeta"]) == 0.0
    assert all(float(r["zeta"]) <= 1e-10 for r in table)
    assert all(float(r["zeta_ddot"]) >= -1e-11 for r in table)
    assert all(float(r["chart_residual"]) < 1e-9 for r in table)
    assert float(first["D_t_0"]) == 0.0 and float(last["D_t_1"]) == 0.0


def test_geodesic_mixture_table(capsys, files):
    a, b = files("a.json", state(6, 2)), files("b.json", state(7, 2))
    code, out, _ = run(capsys, "geodesic", a, b, "--kind", "mixture", "--grid", "5")
    table = rows(out)
    assert code == 0 and len(table) == 5
    assert "zeta" not in table[0]
    # the mixture path is not a straight line in the ξ chart
    assert max(float(r["chart_residual"]) for r in table) > 1e-4


def test_geodesic_grid_validation(capsys, files):
    a = files("a.json", state(6, 2))
    code, _, err = run(capsys, "geodesic", a, a, "--grid", "1")
    assert code == 2 and "--grid" in err


# --- thermal ------------------------------------------------------------------------

def test_thermal_examples(capsys, files, tmp_path):
    h = files("h.json", np.diag([0.0, 1.0]), "hamiltonian")
    out = tmp_path / "rho.json"
    assert run(capsys, "thermal", h, "--beta", str(np.log(3)), "--out", str(out))[0] == 0
    kind, rho = load(out)
    assert kind == "density" and isinstance(rho, DensityMatrix)
    np.testing.assert_allclose(rho.matrix, np.diag([0.75, 0.25]), atol=1e-15)
    code, text, _ = run(capsys, "thermal", h, "--beta", "0")
    assert code == 0
    np.testing.assert_allclose(np.array(json.loads(text)["re"]), np.eye(2) / 2, atol=1e-16)


# --- verify -------------------------------------------------------------------------

def test_verify_single_seed_deterministic(capsys):
    first = run(capsys, "verify", "--dims", "2", "--seeds", "1")
    second = run(capsys, "verify", "--dims", "2", "--seeds", "1")
    assert first == second
    table = rows(first[1])
    assert len(table) == len(CHECKS)
    assert [r["check_name"] for r in table] == sorted(CHECKS)
    assert all(r["dim"] == "2" and r["seed"] == "0" for r in table)


def test_verify_seed_changes_draws(capsys):
    a = rows(run(capsys, "verify", "--dims", "3", "--seeds", "1", "--seed", "1")[1])
    b = rows(run(capsys, "verify", "--dims", "3", "--seeds", "1", "--seed", "2")[1])
    assert [r["residual"] for r in a] != [r["residual"] for r in b]


def test_verify_injected_failure(capsys):
    code, out, err = run(capsys, "verify", "--dims", "3", "--seeds", "1", "--inject-failure", "gns.commutant")
    assert code == 1
    assert "FAILED: gns.commutant" in err
    bad = [r for r in rows(out) if r["passed"] == "false"]
    assert {r["check_name"] for r in bad} >= {"gns.commutant"}


def test_verify_configuration_errors(capsys):
    assert run(capsys, "verify", "--dims", "two")[0] == 2
    assert run(capsys, "verify", "--dims", "1")[0] == 2
    assert run(capsys, "verify", "--seeds", "0")[0] == 2
    assert run(capsys, "verify", "--inject-failure", "no.such.check")[0] == 2
    assert run(capsys, "verify", "--tol-profile", "loose")[0] == 2


def test_verify_profiles_only_relax_fd(capsys):
    strict = rows(run(capsys, "verify", "--dims", "3", "--seeds", "1")[1])
    fd = rows(run(capsys, "verify", "--dims", "3", "--seeds", "1", "--tol-profile", "fd")[1])
    changed = {a["check_name"] for a, b in zip(strict, fd) if a["tolerance"] != b["tolerance"]}
    assert changed == {"charts.chi_tangent", "geometry.geodesic_tangent"}
    assert all(float(b["tolerance"]) == 1e-5 for b in fd if b["check_name"] in changed)


def test_verify_default_run_exits_zero(capsys):
    # the stated contract for `qigeo verify` with no options
    code, out, err = run(capsys, "verify")
    failed = sorted({r["check_name"] for r in rows(out) if r["passed"] == "false"})
    assert code == 0, f"failing checks: {failed}"


def test_console_entry_point(tmp_path):
    a = tmp_path / "a.json"
    save(a, np.diag([0.5, 0.5]), "density")
    b = tmp_path / "b.json"
    save(b, np.diag([0.75, 0.25]), "density")
    proc = subprocess.run([sys.executable, "-m", "qigeo.cli", "divergence", str(a), str(b)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "0.143841036226\n"
