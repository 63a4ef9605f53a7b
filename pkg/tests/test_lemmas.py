import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nrbounds import lemmas
from nrbounds.errors import NonFinite, ParamOutOfDomain, UnknownLemma, WrongArity
from nrbounds.params import BoundParams


def vec(seed, d):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(d) + 1j * rng.standard_normal(d)


def test_registry():
    ids = [d.id for d in lemmas.list_lemmas()]
    assert len(ids) == len(set(ids)) == 13
    with pytest.raises(UnknownLemma):
        lemmas.get_lemma("nope")


def test_errors():
    with pytest.raises(WrongArity):
        lemmas.evaluate_lemma("buzano", [[1, 0], [0, 1]])
    with pytest.raises(ParamOutOfDomain):
        lemmas.evaluate_lemma("generalized-buzano", [[1], [1], [1]])
    with pytest.raises(NonFinite):
        lemmas.evaluate_lemma("cauchy-schwarz", [[np.inf], [1]])
    with pytest.raises(ParamOutOfDomain):
        lemmas.evaluate_lemma("holder-mccarthy", [np.eye(2), [1, 0]], BoundParams(r=-1.0))


def test_buzano_equality_when_aligned():
    x = vec(0, 4)
    c = lemmas.evaluate_lemma("buzano", [x, x, x])
    assert c.lhs == pytest.approx(c.rhs)


def test_cauchy_schwarz_tight_for_parallel_vectors():
    x = vec(1, 5)
    c = lemmas.evaluate_lemma("cauchy-schwarz", [x, (2 - 1j) * x])
    assert c.holds and c.margin == pytest.approx(0.0, abs=1e-9 * c.rhs)


def test_e_is_normalized():
    a, b, e = vec(2, 3), vec(3, 3), vec(4, 3)
    c1 = lemmas.evaluate_lemma("buzano", [a, b, e])
    c2 = lemmas.evaluate_lemma("buzano", [a, b, 7 * e])
    assert c1.lhs == pytest.approx(c2.lhs) and c1.rhs == pytest.approx(c2.rhs)


def test_holder_mccarthy_direction():
    a = np.diag([1.0, 4.0])
    x = np.array([1.0, 1.0]) / np.sqrt(2)
    assert lemmas.evaluate_lemma("holder-mccarthy", [a, x], BoundParams(r=2.0)).holds
    assert lemmas.evaluate_lemma("holder-mccarthy", [a, x], BoundParams(r=0.5)).holds


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8),
       st.sampled_from(lemmas.ALPHA_GRID), st.sampled_from(lemmas.BETA_GRID))
def test_mixed_buzano_family_holds(seed, d, alpha, beta):
    a, b, e = vec(seed, d), vec(seed + 1, d), vec(seed + 2, d)
    p = BoundParams(alpha=alpha, beta=beta)
    for lid in ("generalized-buzano", "mix-al-be", "ramadan-kareem1"):
        assert lemmas.evaluate_lemma(lid, [a, b, e], p).holds


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 10), st.sampled_from(lemmas.R_GRID))
def test_bohr(seed, d, r):
    x = np.abs(np.random.default_rng(seed).standard_normal(d))
    assert lemmas.evaluate_lemma("bohr", [x], BoundParams(r=r)).holds


def test_fuzz_small_has_no_violations():
    for d in lemmas.list_lemmas():
        res = lemmas.fuzz_lemma(d.id, trials=300, seed=5)
        assert len(res) == len(lemmas.param_grid(d.id))
        assert all(r.violations == 0 for r in res), d.id


def test_fuzz_is_deterministic():
    a = lemmas.fuzz_lemma("drag", trials=200, seed=1)
    b = lemmas.fuzz_lemma("drag", trials=200, seed=1)
    assert a == b
