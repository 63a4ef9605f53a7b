"""Inner-product inequalities as predicates on concrete vectors.

Each lemma is implemented once in batched form: arrays with a leading
trial axis go in, ``(lhs, rhs)`` arrays come out.  :func:`evaluate_lemma`
is the single-sample front end and :func:`fuzz_lemma` the randomized
sweep.  Inner products are linear in the first slot.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NegativeEntry, NonFinite, NotPSD, ParamOutOfDomain, UnknownLemma, WrongArity
from .params import BoundParams, derived_constants, require

REL_TOL = 1e-10
ABS_TOL = 1e-12

ALPHA_GRID = (2, 3, 0.5, 1 + 1j, -1, 1e-3 * (1 + 1j))
BETA_GRID = (0.0, 0.5, 1.0, 5.0)
WEIGHT_GRID = (0.0, 0.25, 0.5, 1.0)
R_GRID = (1.0, 1.5, 2.0, 3.0)
N_GRID = (1, 2, 3)
HM_R_GRID = (0.25, 0.5, 1.0, 1.5, 2.0, 3.0)


@dataclass(frozen=True)
class LemmaDescriptor:
    id: str
    arity: int
    params: tuple
    citation: str
    statement: str
    constraints: tuple = ()


@dataclass(frozen=True)
class LemmaCheck:
    lemma_id: str
    lhs: float
    rhs: float
    holds: bool
    margin: float


def lemma_holds(lhs, rhs):
    return lhs <= rhs * (1 + REL_TOL) + ABS_TOL


def _ip(x, y):
    return np.einsum("...i,...i->...", x, np.conj(y))


def _nrm(x):
    return np.linalg.norm(x, axis=-1)


def _unit(e):
    n = _nrm(e)[..., None]
    if np.any(n == 0):
        raise ParamOutOfDomain("e must be nonzero")
    return e / n


def _buz_lhs(a, b, e):
    return np.abs(_ip(a, e) * _ip(e, b))


def _ab_terms(a, b):
    na, nb = _nrm(a), _nrm(b)
    return na, nb, np.abs(_ip(a, b))


def _cauchy_schwarz(vs, p):
    x, y = vs
    return np.abs(_ip(x, y)) ** 2, _nrm(x) ** 2 * _nrm(y) ** 2


def _buzano(vs, p):
    x, y, z = vs
    na, nb, ab = _ab_terms(x, y)
    return _buz_lhs(x, y, z), _nrm(z) ** 2 / 2 * (na * nb + ab)


def _gen_buzano(vs, p):
    x, y, z = vs
    a = p.alpha
    na, nb, ab = _ab_terms(x, y)
    return _buz_lhs(x, y, z), _nrm(z) ** 2 / abs(a) * (max(1.0, abs(a - 1)) * na * nb + ab)


def _mix_al_be(vs, p):
    a, b, e = vs
    c = derived_constants(p)
    na, nb, ab = _ab_terms(a, b)
    return _buz_lhs(a, b, e) ** 2, c.lambda1 * na**2 * nb**2 + c.lambda2 * na * nb * ab


def _gammas(beta):
    return (2 * beta + 1) / (beta + 1), (2 * beta + 3) / (beta + 1)


def _buzano_beta(vs, p):
    a, b, e = vs
    g1, g2 = _gammas(p.beta)
    na, nb, ab = _ab_terms(a, b)
    return _buz_lhs(a, b, e) ** 2, 0.25 * (g1 * na**2 * nb**2 + g2 * na * nb * ab)


def _ramadan_kareem1(vs, p):
    a, b, e = vs
    c = derived_constants(p)
    na, nb, ab = _ab_terms(a, b)
    return _buz_lhs(a, b, e) ** 2, c.delta1 * na**2 * nb**2 + c.delta2 * ab**2


def _ramad13(vs, p):
    a, b, e = vs
    g1, _ = _gammas(p.beta)
    na, nb, ab = _ab_terms(a, b)
    return _buz_lhs(a, b, e) ** 2, 0.5 * (g1 * na**2 * nb**2 + ab**2 / (p.beta + 1))


def _modified_buzano(vs, p):
    a, b, e = vs
    g1, g2 = _gammas(p.beta)
    r = p.r
    na, nb, ab = _ab_terms(a, b)
    return _buz_lhs(a, b, e) ** (2 * r), 0.25 * (g1 * (na * nb) ** (2 * r) + g2 * (na * nb) ** r * ab**r)


def _great_a1(vs, p):
    a, b, e = vs
    c = derived_constants(p)
    n = int(p.n)
    na, nb, ab = _ab_terms(a, b)
    rhs = sum(
        math.comb(n, k) * c.lambda1**k * c.lambda2 ** (n - k) * (na * nb) ** (n + k) * ab ** (n - k)
        for k in range(n + 1)
    )
    return _buz_lhs(a, b, e) ** (2 * n), rhs


def _drag(vs, p):
    a, b, e = vs
    lhs = np.abs(_ip(a, e)) ** 2 + np.abs(_ip(e, b)) ** 2
    rhs = np.sqrt(_nrm(a) ** 4 + _nrm(b) ** 4 + 2 * np.abs(_ip(a, b)) ** 2)
    return lhs, rhs


def _bohr(vs, p):
    (a,) = vs
    if np.any(np.abs(a.imag) > 0) or np.any(a.real < 0):
        raise NegativeEntry("Bohr's inequality takes non-negative reals")
    a = a.real
    n = a.shape[-1]
    return a.sum(axis=-1) ** p.r, n ** (p.r - 1) * (a ** p.r).sum(axis=-1)


def _jensen(vs, p):
    a, b = (v[..., 0] for v in vs)
    if np.any(np.abs(a.imag) > 0) or np.any(np.abs(b.imag) > 0) or np.any(a.real <= 0) or np.any(b.real <= 0):
        raise NegativeEntry("a and b must be positive reals")
    a, b = a.real, b.real
    t, r = p.lambda_exp, p.r
    geo = a**t * b ** (1 - t)
    ari = t * a + (1 - t) * b
    pm = (t * a**r + (1 - t) * b**r) ** (1 / r)
    # both steps of the chain are folded into one margin
    rel = np.minimum(pm - ari, ari - geo) / np.maximum(pm, 1e-300)
    return pm * (1 - rel), pm


def _holder(vs, p):
    a, x = vs
    r = p.r
    x = _unit(x)
    w, v = np.linalg.eigh((a + np.conj(np.swapaxes(a, -1, -2))) / 2)
    if np.any(w < -1e-12 * np.maximum(1.0, np.abs(w).max(axis=-1, keepdims=True))):
        raise NotPSD("A must be positive semidefinite")
    w = np.clip(w, 0, None)
    y = np.einsum("...ji,...j->...i", np.conj(v), x)  # coordinates in the eigenbasis
    wt = np.abs(y) ** 2
    ax = (wt * w).sum(axis=-1)
    arx = (wt * w**r).sum(axis=-1)
    if r >= 1:
        return ax**r, arx
    return arx, ax**r


_LEMMAS = {}
_FUNCS = {}


def _add(id, arity, params, fn, citation, statement, constraints=()):
    _LEMMAS[id] = LemmaDescriptor(id, arity, tuple(params), citation, statement, tuple(constraints))
    _FUNCS[id] = fn


_add("cauchy-schwarz", 2, (), _cauchy_schwarz, "Cauchy-Schwarz", "|<x,y>|^2 <= ||x||^2 ||y||^2")
_add("buzano", 3, (), _buzano, "Buzano", "|<x,z><z,y>| <= ||z||^2/2 (||x|| ||y|| + |<x,y>|)")
_add("generalized-buzano", 3, ("alpha",), _gen_buzano, "Khosravi-Drnovsek-Moslehian",
     "|<x,z><z,y>| <= ||z||^2/|alpha| (max(1,|alpha-1|) ||x|| ||y|| + |<x,y>|)")
_add("mix-al-be", 3, ("alpha", "beta"), _mix_al_be, "mixed Buzano with alpha, beta",
     "|<a,e><e,b>|^2 <= lambda1 ||a||^2 ||b||^2 + lambda2 ||a|| ||b|| |<a,b>|")
_add("buzano-beta", 3, ("beta",), _buzano_beta, "mixed Buzano at alpha = 2",
     "|<a,e><e,b>|^2 <= 1/4 (gamma1 ||a||^2 ||b||^2 + gamma2 ||a|| ||b|| |<a,b>|)")
_add("ramadan-kareem1", 3, ("alpha", "beta"), _ramadan_kareem1, "Bohr-squared generalized Buzano",
     "|<a,e><e,b>|^2 <= delta1 ||a||^2 ||b||^2 + delta2 |<a,b>|^2")
_add("ramad13", 3, ("beta",), _ramad13, "Bohr-squared Buzano at alpha = 2",
     "|<a,e><e,b>|^2 <= 1/2 (gamma1 ||a||^2 ||b||^2 + |<a,b>|^2/(beta+1))")
_add("modified-buzano", 3, ("beta", "r"), _modified_buzano, "r-th power Buzano",
     "|<a,e><e,b>|^(2r) <= 1/4 (gamma1 ||a||^(2r) ||b||^(2r) + gamma2 ||a||^r ||b||^r |<a,b>|^r)")
_add("great-a1", 3, ("alpha", "beta", "n"), _great_a1, "binomial power of the mixed Buzano bound",
     "|<a,e><e,b>|^(2n) <= sum_k C(n,k) lambda1^k lambda2^(n-k) (||a|| ||b||)^(n+k) |<a,b>|^(n-k)",
     constraints=("n >= 1",))
_add("drag", 3, (), _drag, "Dragomir",
     "|<a,e>|^2 + |<e,b>|^2 <= sqrt(||a||^4 + ||b||^4 + 2 |<a,b>|^2)")
_add("bohr", 1, ("r",), _bohr, "Bohr", "(sum a_i)^r <= n^(r-1) sum a_i^r, a_i >= 0")
_add("jensen-power", 2, ("lambda_exp", "r"), _jensen, "Jensen power mean",
     "a^t b^(1-t) <= t a + (1-t) b <= (t a^r + (1-t) b^r)^(1/r), t = lambda_exp")
_add("holder-mccarthy", 2, ("r",), _holder, "Holder-McCarthy",
     "<Ax,x>^r <= <A^r x,x> for r >= 1, reversed for 0 < r <= 1; inputs A (PSD), x",
     constraints=("r > 0",))

_NORMALIZE_E = {k for k, d in _LEMMAS.items() if d.arity == 3}


def list_lemmas() -> list:
    return list(_LEMMAS.values())


def get_lemma(lemma_id: str) -> LemmaDescriptor:
    try:
        return _LEMMAS[lemma_id]
    except KeyError:
        raise UnknownLemma(f"unknown lemma id {lemma_id!r}") from None


def _validate_params(desc, params):
    if desc.id == "holder-mccarthy":
        r = params.r
        if r is None or not (isinstance(r, (int, float)) and math.isfinite(r) and r > 0):
            raise ParamOutOfDomain("holder-mccarthy requires r > 0")
        return
    require(params, desc.params)


def _batched(lemma_id, vectors, params):
    desc = get_lemma(lemma_id)
    if len(vectors) != desc.arity:
        raise WrongArity(f"{lemma_id} takes {desc.arity} operand(s), got {len(vectors)}")
    _validate_params(desc, params)
    vs = [np.asarray(v, dtype=complex) for v in vectors]
    for v in vs:
        if not np.all(np.isfinite(v)):
            raise NonFinite("operands must be finite")
    if lemma_id in _NORMALIZE_E:
        vs[2] = _unit(vs[2])
    return _FUNCS[lemma_id](vs, params)


def evaluate_lemma(lemma_id: str, vectors, params: Optional[BoundParams] = None) -> LemmaCheck:
    """Evaluate one lemma on concrete operands.

    Buzano-family lemmas take ``[a, b, e]`` and normalize ``e``.
    ``holder-mccarthy`` takes ``[A, x]`` with ``A`` PSD; ``jensen-power``
    takes scalars ``a, b``; ``bohr`` takes one non-negative vector.
    """
    params = params if params is not None else BoundParams()
    vectors = [np.atleast_1d(np.asarray(v, dtype=complex)) for v in vectors]
    lhs, rhs = _batched(lemma_id, vectors, params)
    lhs, rhs = float(lhs), float(rhs)
    return LemmaCheck(lemma_id, lhs, rhs, bool(lemma_holds(lhs, rhs)), rhs - lhs)


def param_grid(lemma_id: str) -> list:
    """Default fuzzing grid: cross product over the lemma's parameters."""
    desc = get_lemma(lemma_id)
    axes = {
        "alpha": ALPHA_GRID,
        "beta": BETA_GRID,
        "lambda_exp": WEIGHT_GRID,
        "r": HM_R_GRID if lemma_id == "holder-mccarthy" else R_GRID,
        "n": N_GRID,
    }
    grid = [BoundParams()]
    for name in desc.params:
        grid = [g.with_(**{name: v}) for g in grid for v in axes[name]]
    return grid


def _cgauss(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _sample(lemma_id, rng, trials, dim):
    desc = get_lemma(lemma_id)
    if lemma_id == "bohr":
        return [np.abs(_cgauss(rng, (trials, dim)))]
    if lemma_id == "jensen-power":
        return [np.exp(rng.standard_normal((trials, 1)) * 2) + 0j, np.exp(rng.standard_normal((trials, 1)) * 2) + 0j]
    if lemma_id == "holder-mccarthy":
        g = _cgauss(rng, (trials, dim, dim))
        return [g @ np.conj(np.swapaxes(g, -1, -2)), _cgauss(rng, (trials, dim))]
    vs = [_cgauss(rng, (trials, dim)) for _ in range(desc.arity)]
    # a quarter of the samples are near-aligned to probe the equality cases
    q = trials // 4
    if desc.arity >= 2 and q:
        base = vs[0][:q]
        vs[1][:q] = base * (rng.standard_normal((q, 1)) + 1j * rng.standard_normal((q, 1))) + 1e-3 * vs[1][:q]
        if desc.arity == 3:
            vs[2][:q] = base + 1e-3 * vs[2][:q]
    return vs


@dataclass(frozen=True)
class FuzzResult:
    lemma_id: str
    params: BoundParams
    trials: int
    violations: int
    worst_margin: float


def fuzz_lemma(lemma_id: str, trials: int = 10_000, seed: int = 0, dims=range(2, 9), grid=None) -> list:
    """Random sweep of one lemma over its parameter grid.

    Trials are split evenly over ``dims``.  ``worst_margin`` is the
    smallest ``(rhs*(1+tol)+atol - lhs)/max(1,|rhs|)``; it is negative
    exactly when a violation occurred.
    """
    grid = param_grid(lemma_id) if grid is None else grid
    dims = list(dims)
    out = []
    for gi, params in enumerate(grid):
        rng = np.random.default_rng([seed, gi])
        violations = 0
        worst = math.inf
        per = [trials // len(dims) + (i < trials % len(dims)) for i in range(len(dims))]
        for dim, k in zip(dims, per):
            if k == 0:
                continue
            lhs, rhs = _batched(lemma_id, _sample(lemma_id, rng, k, dim), params)
            slack = rhs * (1 + REL_TOL) + ABS_TOL - lhs
            violations += int(np.sum(slack < 0))
            worst = min(worst, float(np.min(slack / np.maximum(1.0, np.abs(rhs)))))
        out.append(FuzzResult(lemma_id, params, trials, violations, worst))
    return out
