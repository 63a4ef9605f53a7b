import math

import pytest

from nrbounds import apps


@pytest.mark.parametrize("sid", apps.SCENARIOS)
def test_scenario_passes_against_targets(sid):
    rows = apps.repro(sid)
    assert rows
    failed = [(r.name, r.measured, r.target) for r in rows if not r.passed]
    assert not failed


def test_unknown_scenario():
    with pytest.raises(KeyError):
        apps.repro("nope")


def test_discrepancies_are_annotated():
    annotated = {
        "volterra": ("omega_A_at_t1", "omega_comparison"),
        "fractional": ("norm_A4_plus_K4",),
        "fpde": ("norm_K",),
        "example": ("norm_T4_X4", "norm_T2_X2", "omega_E", "bound"),
    }
    for sid, names in annotated.items():
        sc = apps.BUILDERS[sid]()
        for n in names:
            e = sc.expected[n]
            assert e.note and e.oracle is not None and e.oracle != e.value
            assert e.note in sc.notes


def test_example_closed_forms():
    sc = apps.build_example()
    assert sc.measure["norm_T4_X4"]() == pytest.approx(19 + math.sqrt(181), abs=1e-10)
    assert sc.measure["norm_T2_X2"]() == pytest.approx(5 + math.sqrt(5), abs=1e-10)
    assert sc.measure["norm_S4_Y4"]() == pytest.approx(27.5 + math.sqrt(551.25), abs=1e-10)
    assert sc.measure["norm_S2_Y2"]() == pytest.approx(5.5 + math.sqrt(11.25), abs=1e-10)


def test_example_bound_matches_independent_assembly():
    sc = apps.build_example()
    assert sc.measure["bound"]() == pytest.approx(sc.expected["bound"].oracle, rel=1e-9)
    assert sc.measure["omega4_A"]() <= sc.measure["bound"]()


def test_volterra_closed_form():
    want = 0.5 * (2.5 + math.sqrt(2.25 + (2 - math.exp(-1)) ** 2))
    assert apps.build_volterra().measure["omega_comparison"]() == pytest.approx(want, abs=1e-12)
    assert want == pytest.approx(2.358, abs=1e-3)


def test_fpde_stiffness_norm():
    assert apps.build_fpde().measure["norm_K"]() == pytest.approx(4 * (2 + math.sqrt(2)), abs=1e-10)
