import json

import numpy as np
import pytest

from nrbounds import matfun as mf
from nrbounds import verify
from nrbounds.errors import BadDim
from nrbounds.numrad import omega


def test_kind_aliases_and_errors():
    assert verify.canonical_kind("ginibre") == "ginibre-complex"
    with pytest.raises(BadDim):
        verify.EnsembleSpec("ginibre", 0, 1, 0)
    with pytest.raises(BadDim):
        verify.EnsembleSpec("nope", 2, 1, 0)


@pytest.mark.parametrize("kind", verify.KINDS)
def test_ensemble_properties(kind):
    mats = verify.generate(verify.EnsembleSpec(kind, 4, 5, 3))
    assert len(mats) == 5
    for a in mats:
        assert a.shape == (4, 4)
        if kind in ("hermitian", "psd"):
            assert np.allclose(a, a.conj().T)
        if kind == "psd":
            assert np.linalg.eigvalsh(a).min() >= -1e-12
        if kind == "nilpotent-sq-zero":
            assert np.allclose(a @ a, 0, atol=1e-10)
            assert omega(a) == pytest.approx(mf.op_norm(a) / 2, abs=1e-9)
        if kind in ("normal", "unitary"):
            assert mf.is_normal(a)
        if kind == "nonneg-entrywise":
            assert np.all(a.real >= 0) and np.all(a.imag == 0)


def test_generation_is_deterministic():
    s = verify.EnsembleSpec("ginibre", 3, 4, 9)
    assert all(np.array_equal(x, y) for x, y in zip(verify.generate(s), verify.generate(s)))
    other = verify.generate(verify.EnsembleSpec("ginibre", 3, 4, 10))
    assert not np.array_equal(verify.generate(s)[0], other[0])


def test_bound_grid_respects_domain():
    for p in verify.bound_grid("malik-a1"):
        assert p.p * p.r >= 2 - 1e-12 and p.q * p.r >= 2 - 1e-12
    assert len(verify.bound_grid("norm-upper")) == 1


def test_run_trials_records_and_summary():
    rep = verify.run_trials(["kittaneh-upper", "moby-a2"], verify.EnsembleSpec("normal", 3, 3, 1))
    assert len(rep.records) == 3 * (1 + len(verify.bound_grid("moby-a2")))
    s = rep.summary()
    assert s["violations"] == 0 and s["errors"] == 0
    assert set(s["per_bound"]) == {"kittaneh-upper", "moby-a2"}


def test_violation_raise_mode_has_recipe():
    with pytest.raises(verify.ViolationError, match="trial="):
        verify.run_trials(["ineq9.1"], verify.EnsembleSpec("nilpotent", 2, 20, 0), on_violation="raise")


def test_json_round_trip_is_exact():
    rep = verify.run_trials(["kittaneh-lower", "cor3.18"], verify.EnsembleSpec("ginibre", 3, 2, 4))
    text = verify.report_to_json(rep)
    back = verify.report_from_json(text)
    assert verify.report_to_json(back) == text
    assert [r.bound for r in back.records] == [r.bound for r in rep.records]


def test_csv_and_emit(tmp_path):
    rep = verify.run_trials(["norm-upper"], verify.EnsembleSpec("ginibre", 2, 3, 0))
    path = tmp_path / "r.csv"
    verify.emit_report(rep, "csv", path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(verify.CSV_HEADER)
    assert len(lines) == 4
    verify.emit_report(rep, "json", tmp_path / "r.json")
    assert json.loads((tmp_path / "r.json").read_text())["spec"]["kind"] == "ginibre-complex"
    with pytest.raises(ValueError):
        verify.emit_report(rep, "xml", tmp_path / "r.xml")


def test_tightness_stats_ratio_bounds():
    rep = verify.run_trials(["kittaneh-upper"], verify.EnsembleSpec("ginibre", 4, 10, 2))
    st = verify.tightness_stats(rep)["kittaneh-upper"]
    q = st["tightness"]
    assert 0 < q["min"] <= q["median"] <= q["max"] <= 1 + 1e-8
    assert st["count"] == 10 and st["rank"] == 1
