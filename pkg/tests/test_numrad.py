import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nrbounds import matfun as mf
from nrbounds.errors import NegativeEntry, NonSquare, ShapeMismatch
from nrbounds.numrad import (
    block_compose,
    horn_bound,
    nr_2x2_nonneg,
    numerical_radius,
    numerical_radius_oracle,
    omega,
)


def cmat(seed, n):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


seeds = st.integers(0, 2**32 - 1)
dims = st.integers(1, 6)


def test_known_values():
    assert omega([[0, 1], [0, 0]]) == pytest.approx(0.5, abs=1e-12)
    assert omega(np.diag([3, -5])) == pytest.approx(5, abs=1e-12)
    assert omega([[1, 1], [0, 1]]) == pytest.approx(1.5, abs=1e-10)


def test_witness_attains_value():
    a = cmat(3, 4)
    res = numerical_radius(a, method="sweep")
    x = res.witness
    assert np.linalg.norm(x) == pytest.approx(1.0)
    assert abs(np.vdot(x, a @ x)) == pytest.approx(res.value, rel=1e-9)


def test_shortcuts_agree_with_sweep():
    h = cmat(1, 5)
    h = h + h.conj().T
    nn = np.abs(cmat(2, 4).real)
    for m in (h, nn):
        assert numerical_radius(m).value == pytest.approx(numerical_radius(m, method="sweep").value, rel=1e-10)


def test_non_square():
    with pytest.raises(NonSquare):
        omega(np.ones((2, 3)))


@settings(max_examples=50, deadline=None)
@given(seeds, dims)
def test_norm_sandwich(seed, n):
    a = cmat(seed, n)
    w = omega(a)
    nrm = mf.op_norm(a)
    assert nrm / 2 <= w * (1 + 1e-10) and w <= nrm * (1 + 1e-10)
    assert mf.spectral_radius(a) <= w * (1 + 1e-9)


@settings(max_examples=50, deadline=None)
@given(seeds, dims, st.floats(-math.pi, math.pi), st.floats(0.1, 10))
def test_unitary_and_scaling_invariance(seed, n, phi, c):
    a = cmat(seed, n)
    q, _ = np.linalg.qr(cmat(seed + 1, n))
    w = omega(a)
    assert omega(q.conj().T @ a @ q) == pytest.approx(w, rel=1e-9)
    assert omega(c * np.exp(1j * phi) * a) == pytest.approx(c * w, rel=1e-9)
    assert omega(a.conj().T) == pytest.approx(w, rel=1e-9)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 5))
def test_power_inequality(seed, n):
    a = cmat(seed, n)
    assert omega(a @ a) <= omega(a) ** 2 * (1 + 1e-9)


def test_oracle_never_exceeds_sweep():
    for s in range(20):
        a = cmat(s, 2 + s % 4)
        assert numerical_radius_oracle(a, seed=s) <= omega(a) * (1 + 1e-10)


def test_closed_form_2x2():
    assert nr_2x2_nonneg(8, 0, 1, 1) == pytest.approx(4 + math.sqrt(17))
    with pytest.raises(NegativeEntry):
        nr_2x2_nonneg(-1, 0, 0, 0)
    m = np.array([[2.0, 0.5], [1.0, 0.5]])
    assert horn_bound(m) == pytest.approx(omega(m), rel=1e-10)


def test_block_compose():
    t, s = np.eye(2), 2 * np.eye(2)
    assert block_compose("diag", [t, s]).shape == (4, 4)
    assert np.allclose(block_compose("offdiag", [t, s])[:2, 2:], t)
    assert np.allclose(block_compose("single-row", [t, s, t])[2:], 0)
    with pytest.raises(ShapeMismatch):
        block_compose("offdiag", [t])
    with pytest.raises(ValueError):
        block_compose("nope", [t])
