import numpy as np
import pytest

from nrbounds import catalog, verify
from nrbounds.errors import NotInvertible, NotSelfAdjoint, ParamOutOfDomain, ShapeMismatch, UnknownBound, ZeroAlpha
from nrbounds.numrad import block_compose, omega
from nrbounds.params import BoundParams, derived_constants

# bounds with explicit counterexamples; see the decisions ledger
KNOWN_FALSE = {
    "cor3.18", "chi-mu-single", "kz-single-general", "kz-single-alpha2", "chi-mu-offdiag",
    "malik-a1", "mutah1", "ineq9.1", "seema9", "kz",
}

NIL = np.array([[0, 1], [0, 0]], dtype=complex)


def rand(seed, d):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def test_ids_unique_and_described():
    ds = catalog.list_bounds()
    assert len({d.id for d in ds}) == len(ds) == 43
    for d in ds:
        assert d.input_shape in catalog.INPUT_SHAPES
        assert d.side in (catalog.UPPER, catalog.LOWER)
        assert d.citation and d.inputs
        assert catalog.get_descriptor(d.id) is d


def test_unknown_id():
    with pytest.raises(UnknownBound):
        catalog.evaluate_bound("no-such-bound", [NIL])


def test_missing_and_bad_params():
    with pytest.raises(ParamOutOfDomain):
        catalog.evaluate_bound("moby-a2", [NIL])
    with pytest.raises(ZeroAlpha):
        catalog.evaluate_bound("moby-a2", [NIL], BoundParams(alpha=0, beta=0.0))
    with pytest.raises(ParamOutOfDomain):
        catalog.evaluate_bound("moby-a2", [NIL], BoundParams(alpha=2, beta=-1.0))


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        catalog.evaluate_bound("norm-upper", [NIL, NIL])


def test_derived_constants_at_alpha2_beta0():
    c = derived_constants(BoundParams(alpha=2, beta=0.0))
    assert (c.chi1, c.chi2, c.chi3, c.chi4) == pytest.approx((0.25, 0.75, 0.5, 0.5))
    assert (c.delta1, c.delta2) == pytest.approx((0.5, 0.5))
    assert c.lambda1 == c.chi1 and c.lambda2 == c.chi2


def test_classical_bounds_on_nilpotent():
    assert catalog.evaluate_bound("norm-upper", [NIL]) == pytest.approx(1.0)
    assert catalog.evaluate_bound("norm-lower", [NIL]) == pytest.approx(0.5)
    assert catalog.evaluate_bound("kittaneh-upper", [NIL]) == pytest.approx(0.5)
    assert catalog.evaluate_bound("kittaneh-lower", [NIL]) == pytest.approx(0.25)
    rec = catalog.check_bound("kittaneh-lower", [NIL])
    assert rec.holds and rec.slack == pytest.approx(0.0, abs=1e-12)


def test_binomial_bound_fails_on_nilpotent():
    # omega^4 = 1/16 but the right-hand side is lambda1^2/2 = 1/32
    rec = catalog.check_bound("ineq9.1", [NIL], BoundParams(alpha=2, beta=0.0))
    assert rec.omega_power == pytest.approx(1 / 16)
    assert rec.bound == pytest.approx(1 / 32)
    assert not rec.holds


def test_block_bound_fails_on_identity_blocks():
    eye = np.eye(2, dtype=complex)
    rec = catalog.check_bound("kz", [eye, eye, eye, eye], BoundParams(alpha=2, beta=0.0))
    assert rec.omega_power == pytest.approx(16.0)
    assert rec.bound == pytest.approx(14.0)
    assert not rec.holds


def test_target_matrices():
    t, s = rand(1, 3), rand(2, 3)
    assert np.allclose(catalog.target_matrix("kittaneh-upper", [t]), t)
    assert np.allclose(catalog.target_matrix("moby-a1", [t, s], BoundParams(alpha=2, beta=0.0)), block_compose("offdiag", [t, s]))
    assert np.allclose(catalog.target_matrix("dragomir-product", [t, s], BoundParams(r=1.0)), s.conj().T @ t)


def test_function_pair_matches_power_pair():
    blocks = [rand(k, 2) for k in range(4)]
    lam = 0.3
    p = BoundParams(s=1.0, lambda_exp=lam)
    fg = catalog.FunctionPair(lambda t: t**lam, lambda t: t ** (1 - lam))
    a = catalog.evaluate_bound("comparison-fg", blocks, p)
    b = catalog.evaluate_bound("comparison-fg", blocks, p, fg=fg)
    assert a == pytest.approx(b, rel=1e-10)


def test_function_pair_rejects_bad_product():
    blocks = [rand(k, 2) for k in range(4)]
    fg = catalog.FunctionPair(lambda t: t, lambda t: t)
    with pytest.raises(ParamOutOfDomain):
        catalog.evaluate_bound("comparison-fg", blocks, BoundParams(s=1.0, lambda_exp=0.5), fg=fg)


def test_context_reuse_is_consistent():
    a = rand(5, 4)
    ctx = catalog.make_context("moby-a2", [a])
    for beta in (0.0, 0.5, 1.0):
        p = BoundParams(alpha=2, beta=beta)
        assert catalog.evaluate_bound("moby-a2", params=p, ctx=ctx) == catalog.evaluate_bound("moby-a2", [a], p)


def test_similarity_transform_bound():
    k = rand(7, 3)
    eye = np.eye(3)
    rec = catalog.similarity_transform_bound(k, eye, eye)
    assert rec.lhs == pytest.approx(rec.rhs) and rec.holds
    p = np.diag([1.0, 2.0, -3.0])
    q = np.diag([0.5, 1.0, 4.0])
    assert catalog.similarity_transform_bound(k, p, q).holds
    with pytest.raises(NotInvertible):
        catalog.similarity_transform_bound(k, np.diag([1.0, 0.0, 1.0]), eye)
    with pytest.raises(NotSelfAdjoint):
        catalog.similarity_transform_bound(k, np.triu(np.ones((3, 3))), eye)


def test_chains_ordered_on_random_inputs():
    rows = verify.check_chains(trials=10, seed=3)
    assert rows and all(r["ordered"] for r in rows)


def test_is_nondecreasing():
    assert catalog.is_nondecreasing([1.0, 1.0, 2.0])
    assert not catalog.is_nondecreasing([1.0, 0.9])


@pytest.mark.parametrize("bound_id", sorted(d.id for d in catalog.list_bounds()))
def test_sound_bounds_hold_on_small_sweep(bound_id):
    rep = verify.run_trials([bound_id], verify.EnsembleSpec("ginibre-complex", 3, 4, 17))
    assert not rep.errors
    if bound_id not in KNOWN_FALSE:
        assert not rep.violations, rep.recipe(rep.violations[0])


def test_bounds_scale_correctly_for_sound_entries():
    # omega is homogeneous, so omega^k/bound is scale invariant for sound homogeneous bounds
    a = rand(11, 3)
    for bid in ("kittaneh-upper", "norm-upper", "kittaneh-lower"):
        r1 = catalog.check_bound(bid, [a])
        r2 = catalog.check_bound(bid, [3 * a])
        k = catalog.get_descriptor(bid).power(BoundParams())
        assert r2.bound == pytest.approx(r1.bound * 3**k, rel=1e-10)
        assert r2.omega_power == pytest.approx(omega(3 * a) ** k, rel=1e-12)


def test_power_resolution():
    p = BoundParams(r=1.5, n=3)
    assert catalog.get_descriptor("el-haddad-kittaneh").power(p) == 3.0
    assert catalog.get_descriptor("ramadan1").power(p) == 6.0
    assert catalog.get_descriptor("mutah1").power(p) == 6.0
    assert catalog.get_descriptor("kz").power(p) == 4.0
