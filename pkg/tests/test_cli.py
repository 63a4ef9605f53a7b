import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from nrbounds.cli import fmt, main
from nrbounds.matio import write_matrix


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def nil(tmp_path):
    p = tmp_path / "nil.json"
    p.write_text('{"rows":2,"cols":2,"data":[[0,0],[1,0],[0,0],[0,0]]}')
    return str(p)


def test_fmt():
    assert fmt(4) == "4.000000000000"
    assert fmt(0.5) == "0.500000000000"
    assert fmt(math.nan) == "nan"


def test_compute(nil):
    assert run("compute", "--in", nil) == (0, "0.500000000000\n", "")
    assert run("compute", "--in", nil, "--what", "norm")[1] == "1.000000000000\n"
    assert run("compute", "--in", nil, "--what", "specrad")[1] == "0.000000000000\n"
    assert run("compute", "--in", nil, "--what", "abs")[1].splitlines()[1] == "0.000000000000 1.000000000000"


def test_compute_matrix_market(tmp_path):
    p = tmp_path / "m.mtx"
    p.write_text("%%MatrixMarket matrix array real general\n2 2\n8\n1\n1\n0\n")
    code, out, _ = run("compute", "--in", str(p))
    assert code == 0 and float(out) == pytest.approx(4 + math.sqrt(17), abs=1e-11)


def test_bound_and_check(nil):
    code, out, _ = run("bound", "--id", "kittaneh-upper", "--in", nil)
    assert (code, out) == (0, "bound 0.500000000000\n")
    code, out, _ = run("bound", "--id", "ineq9.1", "--in", nil, "--alpha", "2", "--beta", "0", "--check")
    assert code == 1 and "holds false" in out
    code, out, _ = run("bound", "--id", "moby-a2", "--in", nil, "--alpha", "2,0", "--beta", "0", "--check")
    assert code == 0 and "holds true" in out


def test_bound_positional_blocks(tmp_path):
    paths = []
    for i, m in enumerate([[[1, -1], [0, 1]], [[2, 1], [-1, 1]], [[1, -1], [1, 1]], [[1, 1], [2, 1]]]):
        p = tmp_path / f"b{i}.json"
        write_matrix(p, np.array(m, dtype=complex))
        paths += ["--in", str(p)]
    code, out, _ = run("bound", "--id", "modified-kz", *paths, "--alpha", "2", "--beta", "0", "--mu", "0.5", "--check")
    assert code == 0
    assert float(out.split()[1]) == pytest.approx(287.5628, abs=1e-3)


def test_exit_codes(tmp_path, nil):
    assert run("compute", "--in", str(tmp_path / "missing.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"rows":2,"cols":2,"data":[[0,0]]}')
    assert run("compute", "--in", str(bad))[0] == 3
    assert run("bound", "--id", "nope", "--in", nil)[0] == 2
    assert run("bound", "--id", "moby-a2", "--in", nil)[0] == 3
    assert run("frobnicate")[0] == 2
    assert run("compute")[0] == 2
    assert run("bound", "--id", "moby-a2", "--in", nil, "--alpha", "1,2,3")[0] == 2


def test_repro_quantum_line():
    code, out, _ = run("repro", "--scenario", "quantum")
    assert code == 0
    assert "omega_comparison 4.000000000000 expected 4 PASS" in out.splitlines()


def test_repro_all_passes_against_oracles():
    code, out, _ = run("repro")
    assert code == 0
    assert "omega_E 3.225504" in out and "oracle" in out


def test_verify_writes_report(tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run("verify", "--bounds", "kittaneh-upper,moby-a2", "--ensemble", "ginibre", "--dim", "3",
                       "--count", "5", "--seed", "42", "--out", str(out_path))
    assert code == 0 and "violations 0" in out
    doc = json.loads(out_path.read_text())
    assert doc["spec"] == {"kind": "ginibre-complex", "dim": 3, "count": 5, "seed": 42}
    csv_path = tmp_path / "r.csv"
    code, _, _ = run("verify", "--bounds", "norm-upper", "--ensemble", "normal", "--dim", "2", "--count", "3",
                     "--seed", "1", "--grid", "minimal", "--out", str(csv_path), "--format", "csv")
    assert code == 0 and len(csv_path.read_text().splitlines()) == 4


def test_verify_reports_violation(tmp_path):
    code, out, _ = run("verify", "--bounds", "ineq9.1", "--ensemble", "nilpotent", "--dim", "2", "--count", "3",
                       "--seed", "0", "--out", str(tmp_path / "r.json"))
    assert code == 1 and "violation bound=ineq9.1" in out


def test_verify_usage_errors(tmp_path):
    base = ["--dim", "2", "--count", "1", "--seed", "0", "--out", str(tmp_path / "r.json")]
    assert run("verify", "--bounds", "nope", "--ensemble", "ginibre", *base)[0] == 2
    assert run("verify", "--ensemble", "nope", *base)[0] == 2


def test_lemmas_command():
    code, out, _ = run("lemmas", "--id", "buzano", "--trials", "200", "--seed", "0")
    assert code == 0 and out.startswith("buzano grid 1 trials 200 violations 0")
    assert run("lemmas", "--id", "nope", "--trials", "1", "--seed", "0")[0] == 2


def test_listings():
    code, out, _ = run("list-bounds")
    assert code == 0 and len(out.splitlines()) == 43 and "shape=blocks2x2" in out
    code, out, _ = run("list-lemmas")
    assert code == 0 and len(out.splitlines()) == 13


def test_output_is_deterministic(nil):
    a = run("verify", "--bounds", "moby-a1", "--ensemble", "hermitian", "--dim", "2", "--count", "3", "--seed", "5",
            "--out", nil + ".r1")
    b = run("verify", "--bounds", "moby-a1", "--ensemble", "hermitian", "--dim", "2", "--count", "3", "--seed", "5",
            "--out", nil + ".r2")
    assert a == b
    with open(nil + ".r1") as f1, open(nil + ".r2") as f2:
        assert f1.read() == f2.read()


def test_module_entry_point(nil):
    res = subprocess.run([sys.executable, "-m", "nrbounds", "compute", "--in", nil], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "0.500000000000\n"
