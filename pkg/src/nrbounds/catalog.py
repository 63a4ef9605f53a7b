"""Catalog of numerical-radius inequalities as evaluable bounds.

Every entry is a :class:`BoundDescriptor`.  ``evaluate_bound`` returns the
right-hand side of the inequality; ``check_bound`` also computes the
left-hand side ``omega(target)**k`` and applies the tolerance policy.

Input shapes (positional matrix lists):

=============  ==================================================
single         ``[A]``
pair           ``[B, C]`` (target ``[[0, B], [C, 0]]``) or ``[T, S]``
blocks2x2      ``[T, X, Y, S]`` for ``[[T, X], [Y, S]]``
blocksNxN      ``n*n`` blocks, row-major
single_row     ``[S1, ..., Sn]``
triple_AXB     ``[A1, A2, X1, X2, B1, B2]``
triple_list    ``[A1, X1, B1, A2, X2, B2, ...]``
=============  ==================================================

Evaluations share an :class:`EvalContext`, which caches SVDs, powers,
norms and numerical radii per input.  Reusing one context across a
parameter grid is what keeps the verification sweep fast.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import matfun as mf
from .errors import NotInvertible, NotSelfAdjoint, ParamOutOfDomain, ShapeMismatch, UnknownBound
from .numrad import block_compose, omega
from .params import BoundParams, derived_constants, require

UPPER = "upper_on_omega_power"
LOWER = "lower_on_omega_power"

INPUT_SHAPES = ("single", "pair", "blocks2x2", "blocksNxN", "single_row", "triple_AXB", "triple_list")

REL_TOL = 1e-8
ABS_TOL = 1e-10
FG_RTOL = 1e-8


@dataclass(frozen=True)
class BoundDescriptor:
    id: str
    input_shape: str
    params: tuple
    side: str
    omega_exponent: object  # int, or a string such as "2r" resolved by power()
    citation: str
    inputs: str
    target: str
    constraints: tuple = ()
    quantity: str = "omega"
    accepts_fg: bool = False
    options: tuple = ()

    @property
    def param_domain(self) -> dict:
        return {"required": list(self.params), "constraints": list(self.constraints)}

    def power(self, params: BoundParams) -> float:
        k = self.omega_exponent
        if isinstance(k, int):
            return float(k)
        coef, var = k[:-1], k[-1]
        return (float(coef) if coef else 1.0) * float(getattr(params, var))


@dataclass(frozen=True)
class BoundInput:
    shape: str
    matrices: tuple

    @classmethod
    def of(cls, shape, mats):
        return cls(shape, tuple(mf.as_matrix(m) for m in mats))


class PowerPair:
    """``f(t) = t**lam``, ``g(t) = t**(1-lam)``."""

    def __init__(self, lam: float):
        self.lam = float(lam)
        self.tag = ("pow", self.lam)

    def f_abs(self, ctx, key, e):
        return ctx.absp(key, self.lam * e)

    def g_adj(self, ctx, key, e):
        return ctx.adjp(key, (1 - self.lam) * e)


class FunctionPair:
    """Arbitrary non-negative ``f, g`` with ``f(t) g(t) = t``, checked by sampling."""

    def __init__(self, f: Callable, g: Callable):
        self.f, self.g = f, g
        self.tag = ("fn", id(f), id(g))

    def validate(self, ts):
        ts = np.concatenate([np.asarray(ts, dtype=float), np.linspace(0, max(1.0, float(np.max(ts, initial=0))), 33)])
        fv = np.asarray(self.f(ts), dtype=float)
        gv = np.asarray(self.g(ts), dtype=float)
        if np.any(fv < 0) or np.any(gv < 0) or not np.all(np.isfinite(fv * gv)):
            raise ParamOutOfDomain("f and g must be finite and non-negative")
        if np.any(np.abs(fv * gv - ts) > FG_RTOL * np.maximum(ts, 1.0)):
            raise ParamOutOfDomain("f(t) g(t) != t on the sampled spectrum")

    def _apply(self, ctx, key, e, which):
        fn = self.f if which == "f" else self.g
        base = ctx.absp(key, 1.0) if which == "f" else ctx.adjp(key, 1.0)

        def build():
            self.validate(ctx.svals(key))
            return mf.matrix_func(base, lambda t: np.asarray(fn(t), dtype=float) ** e)

        return ctx.memo(("fg", self.tag, which, key, e), build)

    def f_abs(self, ctx, key, e):
        return self._apply(ctx, key, e, "f")

    def g_adj(self, ctx, key, e):
        return self._apply(ctx, key, e, "g")


class EvalContext:
    """Per-input cache.  Keys are input indices or names of derived matrices."""

    def __init__(self, inp: BoundInput):
        self.input = inp
        self.mats = inp.matrices
        self._memo = {}

    def memo(self, key, fn):
        try:
            return self._memo[key]
        except KeyError:
            val = self._memo[key] = fn()
            return val

    def get(self, key, build=None):
        if isinstance(key, int):
            return self.mats[key]
        if build is None:
            return self._memo[("mat", key)]
        return self.memo(("mat", key), build)

    def _powers(self, key):
        return self.memo(("svd", key), lambda: mf.AbsPowers(self.get(key)))

    def svals(self, key):
        return self._powers(key).singular_values

    def absp(self, key, e):
        e = float(e)
        return self.memo(("abs", key, e), lambda: self._powers(key).abs(e))

    def adjp(self, key, e):
        e = float(e)
        return self.memo(("adj", key, e), lambda: self._powers(key).adj(e))

    def norm(self, key, build=None):
        return self.memo(("norm", key), lambda: mf.op_norm(self.get(key) if build is None else build()))

    def omega(self, key, build=None):
        return self.memo(("omega", key), lambda: omega(self.get(key) if build is None else build()))


# shape validation --------------------------------------------------------

def _sq(m, what):
    if m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"{what} must be square, got {m.shape}")


def _check_offdiag(b, c):
    if b.shape != c.shape[::-1]:
        raise ShapeMismatch(f"B {b.shape} and C {c.shape} are not conformable for [[0, B], [C, 0]]")


def _validate(desc, inp):
    mats = inp.matrices
    shape = desc.input_shape
    if shape == "single":
        if len(mats) != 1:
            raise ShapeMismatch(f"{desc.id} takes exactly one matrix")
        _sq(mats[0], "input")
    elif shape == "pair":
        if len(mats) != 2:
            raise ShapeMismatch(f"{desc.id} takes exactly two matrices")
        if desc.id == "dragomir-product":
            t, s = mats
            if t.shape != s.shape:
                raise ShapeMismatch("T and S must have equal shapes")
        else:
            _check_offdiag(*mats)
    elif shape == "blocks2x2":
        if len(mats) != 4:
            raise ShapeMismatch(f"{desc.id} takes four blocks")
        t, x, y, s = mats
        _sq(t, "T")
        _sq(s, "S")
        if x.shape != (t.shape[0], s.shape[0]) or y.shape != (s.shape[0], t.shape[0]):
            raise ShapeMismatch("off-diagonal blocks are not conformable")
    elif shape == "blocksNxN":
        k = math.isqrt(len(mats))
        if k < 1 or k * k != len(mats):
            raise ShapeMismatch("blocksNxN needs a square number of blocks")
        if desc.id == "comparison-2x2" and k != 2:
            raise ShapeMismatch("comparison-2x2 needs exactly four blocks")
        sizes = [mats[i * k + i].shape for i in range(k)]
        for i in range(k):
            _sq(mats[i * k + i], f"diagonal block {i + 1}")
            for j in range(k):
                if mats[i * k + j].shape != (sizes[i][0], sizes[j][0]):
                    raise ShapeMismatch(f"block ({i + 1},{j + 1}) has shape {mats[i * k + j].shape}")
    elif shape == "single_row":
        if len(mats) < 1:
            raise ShapeMismatch("single_row needs at least one block")
        _sq(mats[0], "S1")
        if any(m.shape[0] != mats[0].shape[0] for m in mats):
            raise ShapeMismatch("single-row blocks must share the row count")
    elif shape in ("triple_AXB", "triple_list"):
        if shape == "triple_AXB" and len(mats) != 6:
            raise ShapeMismatch(f"{desc.id} takes six matrices A1, A2, X1, X2, B1, B2")
        if shape == "triple_list" and (len(mats) == 0 or len(mats) % 3):
            raise ShapeMismatch(f"{desc.id} takes a multiple of three matrices")
        d = mats[0].shape
        for m in mats:
            _sq(m, "operand")
            if m.shape != d:
                raise ShapeMismatch("all operands must share one square shape")


# helpers for the off-diagonal family ------------------------------------

def _offdiag_target(ctx):
    return ctx.get("T", lambda: block_compose("offdiag", ctx.mats[:2]))


def _bc(ctx):
    ctx.get("BC", lambda: ctx.mats[0] @ ctx.mats[1])
    ctx.get("CB", lambda: ctx.mats[1] @ ctx.mats[0])


def _pair_max(ctx, e1, e2, c1=1.0, c2=1.0):
    """max(|| c1|C|^e1 + c2|B*|^e2 ||, || c1|B|^e1 + c2|C*|^e2 ||) for inputs [B, C]."""
    def val():
        a = ctx.norm(("csum", e1, e2, c1, c2, 0), lambda: c1 * ctx.absp(1, e1) + c2 * ctx.adjp(0, e2))
        b = ctx.norm(("csum", e1, e2, c1, c2, 1), lambda: c1 * ctx.absp(0, e1) + c2 * ctx.adjp(1, e2))
        return max(a, b)
    return ctx.memo(("pairmax", e1, e2, c1, c2), val)


def _single_sum(ctx, e1, e2, key=0):
    """|| |A|^e1 + |A*|^e2 ||."""
    return ctx.norm(("ssum", key, e1, e2), lambda: ctx.absp(key, e1) + ctx.adjp(key, e2))


def _mu_omega_pair(ctx, mu):
    """max(omega(|B*|^{2(1-mu)} |C|^{2mu}), omega(|C*|^{2(1-mu)} |B|^{2mu}))."""
    a = ctx.omega(("mu1", mu), lambda: ctx.adjp(0, 2 * (1 - mu)) @ ctx.absp(1, 2 * mu))
    b = ctx.omega(("mu2", mu), lambda: ctx.adjp(1, 2 * (1 - mu)) @ ctx.absp(0, 2 * mu))
    return max(a, b)


def _square(ctx, key=0):
    return ctx.get(("sq", key), lambda: ctx.get(key) @ ctx.get(key))


def _fg(params, fg):
    return fg if fg is not None else PowerPair(params.lambda_exp)


def _consts(params):
    return derived_constants(params)


def _need_pr_qr(params):
    if params.p * params.r < 2 - 1e-12 or params.q * params.r < 2 - 1e-12:
        raise ParamOutOfDomain(f"requires p*r >= 2 and q*r >= 2 (p={params.p}, q={params.q}, r={params.r})")


def _need_r2(params):
    if params.r < 2:
        raise ParamOutOfDomain("requires r >= 2")


def _need_n2(params):
    if params.n < 2:
        raise ParamOutOfDomain("requires n >= 2")


# bound formulas ----------------------------------------------------------

def _b_norm_upper(ctx, p, o, fg):
    return ctx.norm(0)


def _b_norm_lower(ctx, p, o, fg):
    return 0.5 * ctx.norm(0)


def _b_kitt_lower(ctx, p, o, fg):
    return 0.25 * _single_sum(ctx, 2, 2)


def _b_kitt_upper(ctx, p, o, fg):
    return 0.5 * _single_sum(ctx, 2, 2)


def _b_el_haddad(ctx, p, o, fg):
    return 0.5 * _single_sum(ctx, 2 * p.r, 2 * p.r)


def _b_dragomir(ctx, p, o, fg):
    return 0.5 * ctx.norm(("drag", p.r), lambda: ctx.absp(0, 2 * p.r) + ctx.absp(1, 2 * p.r))


def _blocks(ctx):
    k = math.isqrt(len(ctx.mats))
    return k, [[ctx.mats[i * k + j] for j in range(k)] for i in range(k)]


def _block_norm(ctx, i, j):
    k = math.isqrt(len(ctx.mats))
    return ctx.norm(i * k + j)


def _hou_matrix(ctx):
    k, _ = _blocks(ctx)
    return np.array([[_block_norm(ctx, i, j) for j in range(k)] for i in range(k)])


def _b_hou(ctx, p, o, fg):
    return omega(_hou_matrix(ctx))


def _b_hou_norm(ctx, p, o, fg):
    return mf.op_norm(_hou_matrix(ctx))


def _b_hou_specrad(ctx, p, o, fg):
    return mf.spectral_radius(_hou_matrix(ctx))


def _b_bani_domi(ctx, p, o, fg):
    k, b = _blocks(ctx)
    m = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            if i == j:
                m[i, i] = 0.5 * (_block_norm(ctx, i, i) + math.sqrt(mf.op_norm(b[i][i] @ b[i][i])))
            else:
                m[i, j] = _block_norm(ctx, i, j)
    return omega(m)


def _b_abu_omar(ctx, p, o, fg):
    k, b = _blocks(ctx)
    m = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            m[i, j] = ctx.omega(i * k + i) if i == j else _block_norm(ctx, i, j)
    return omega(m)


def _b_af_offdiag(ctx, p, o, fg):
    k, b = _blocks(ctx)
    m = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            if i == j:
                m[i, i] = ctx.omega(i * k + i)
            else:
                m[i, j] = omega(block_compose("offdiag", [b[i][j], b[j][i]]))
    return omega(m)


def _b_single_row(ctx, p, o, fg):
    w = ctx.omega(0)
    tail = sum(ctx.norm(j) ** 2 for j in range(1, len(ctx.mats)))
    if o.get("variant", "proof") == "displayed":
        return 0.5 * (w + math.sqrt(w + tail))
    return 0.5 * (w + math.sqrt(w * w + tail))


def _tilde_diag(ctx, fg, s, key):
    return 0.5 * ctx.omega(("tilde", fg.tag, s, key), lambda: fg.f_abs(ctx, key, 2 * s) + fg.g_adj(ctx, key, 2 * s))


def _b_comparison_fg(ctx, p, o, fg):
    fg = _fg(p, fg)
    s = p.s
    k, _ = _blocks(ctx)
    m = np.empty((k, k))
    for i in range(k):
        for j in range(k):
            m[i, j] = _tilde_diag(ctx, fg, s, i * k + i) if i == j else _block_norm(ctx, i, j) ** s
    return k ** (2 * s - 2) * omega(m)


def _b_comparison_2x2(ctx, p, o, fg):
    fg = _fg(p, fg)
    s = p.s
    a = _tilde_diag(ctx, fg, s, 0)
    d = _tilde_diag(ctx, fg, s, 3)
    e = ctx.norm(1) ** s + ctx.norm(2) ** s
    return 2 ** (2 * s - 3) * (a + d + math.sqrt((a - d) ** 2 + e * e))


def _b_offdiag_fg(ctx, p, o, fg):
    fg = _fg(p, fg)
    r = p.r
    # inputs [B, C]: f^{2r}(|B|) + g^{2r}(|C*|) and f^{2r}(|C|) + g^{2r}(|B*|)
    w1 = ctx.omega(("ofg1", fg.tag, r), lambda: fg.f_abs(ctx, 0, 2 * r) + fg.g_adj(ctx, 1, 2 * r))
    w2 = ctx.omega(("ofg2", fg.tag, r), lambda: fg.f_abs(ctx, 1, 2 * r) + fg.g_adj(ctx, 0, 2 * r))
    return 2 ** (r - 2) * math.sqrt(w1) * math.sqrt(w2)


def _w_bc(ctx):
    _bc(ctx)
    return max(ctx.omega("BC"), ctx.omega("CB"))


def _b_moby_a1(ctx, p, o, fg):
    c = _consts(p)
    return c.delta1 / 4 * _pair_max(ctx, 2, 2) ** 2 + c.delta2 * _w_bc(ctx) ** 2


def _b_moby_a2(ctx, p, o, fg):
    c = _consts(p)
    w2 = ctx.omega(("sq", 0), lambda: _square(ctx))
    return c.delta1 / 4 * _single_sum(ctx, 2, 2) ** 2 + c.delta2 * w2**2


def _gammas(p):
    b = p.beta
    return (2 * b + 1) / (b + 1), (2 * b + 3) / (b + 1)


def _b_ramadan1(ctx, p, o, fg):
    g1, g2 = _gammas(p)
    r = p.r
    nm = _pair_max(ctx, 2 * r, 2 * r)
    return g1 / 16 * nm**2 + g2 / 8 * nm * _w_bc(ctx) ** r


def _b_ramadan1_single(ctx, p, o, fg):
    g1, g2 = _gammas(p)
    r = p.r
    nm = _single_sum(ctx, 2 * r, 2 * r)
    w2 = ctx.omega(("sq", 0), lambda: _square(ctx))
    return g1 / 16 * nm**2 + g2 / 8 * nm * w2**r


def _b_malik_a1(ctx, p, o, fg):
    _need_pr_qr(p)
    fg = _fg(p, fg)
    b, r, pp, qq = p.beta, p.r, p.p, p.q
    g1 = (2 * b + 1) / (4 * (b + 1))
    g2 = (2 * b + 3) / (4 * (b + 1))
    _bc(ctx)
    f1 = ctx.norm(("mal", fg.tag, r, pp, "BC"), lambda: fg.f_abs(ctx, "BC", pp * r) / pp + fg.g_adj(ctx, "BC", qq * r) / qq)
    f2 = ctx.norm(("mal", fg.tag, r, pp, "CB"), lambda: fg.f_abs(ctx, "CB", pp * r) / pp + fg.g_adj(ctx, "CB", qq * r) / qq)
    return g1 / 4 * _pair_max(ctx, 4 * r, 4 * r) + g2 / 2 * _pair_max(ctx, 2 * r, 2 * r) * max(f1, f2)


def _b_cor318(ctx, p, o, fg):
    b, r, lam = p.beta, p.r, p.lambda_exp
    _square(ctx)
    m2 = ctx.norm(("c318", r, lam), lambda: ctx.absp(("sq", 0), 2 * r * lam) + ctx.adjp(("sq", 0), 2 * r * (1 - lam)))
    return (2 * b + 1) / (16 * (b + 1)) * _single_sum(ctx, 4 * r, 4 * r) + (2 * b + 3) / (16 * (b + 1)) * _single_sum(
        ctx, 2 * r, 2 * r
    ) * m2


def _b_chi_mu_offdiag(ctx, p, o, fg):
    c = _consts(p)
    mu = p.mu
    nm = _pair_max(ctx, 2 * mu, 2 * (1 - mu))
    return c.chi1 / 4 * nm**2 + c.chi2 / 2 * nm * _mu_omega_pair(ctx, mu) ** 2


def _mu_omega_single(ctx, mu):
    return ctx.omega(("mus", mu), lambda: ctx.adjp(0, 2 * (1 - mu)) @ ctx.absp(0, 2 * mu))


def _b_chi_mu_single(ctx, p, o, fg):
    c = _consts(p)
    mu = p.mu
    nm = _single_sum(ctx, 2 * mu, 2 * (1 - mu))
    return c.chi1 / 4 * nm**2 + c.chi2 / 2 * nm * _mu_omega_single(ctx, mu) ** 2


def _kz_parts(ctx):
    # inputs [T, X, Y, S]
    m4 = max(
        ctx.norm("kz4a", lambda: ctx.absp(0, 4) + ctx.adjp(1, 4)),
        ctx.norm("kz4b", lambda: ctx.absp(3, 4) + ctx.adjp(2, 4)),
    )
    m2 = max(
        ctx.norm("kz2a", lambda: ctx.absp(0, 2) + ctx.adjp(1, 2)),
        ctx.norm("kz2b", lambda: ctx.absp(3, 2) + ctx.adjp(2, 2)),
    )
    t, x, y, s = ctx.mats
    we = ctx.omega("E", lambda: block_compose("offdiag", [x @ s, y @ t]))
    return m4, m2, we


def _b_kz(ctx, p, o, fg):
    c = _consts(p)
    m4, m2, we = _kz_parts(ctx)
    return (2 + 4 * c.chi1) * m4 + 4 * c.chi2 * m2 * we + 2 * we**2


def _b_modified_kz(ctx, p, o, fg):
    c = _consts(p)
    mu = p.mu
    m4, m2, we = _kz_parts(ctx)
    return (
        (2 + 2 * c.chi1 + 2 * c.chi3) * m4
        + (2 * c.chi2 + 2 * mu * c.chi4) * m2 * we
        + (4 + 4 * (1 - mu) * c.chi4) * we**2
    )


def _single_parts(ctx):
    x4 = _single_sum(ctx, 4, 4)
    y2 = _single_sum(ctx, 2, 2)
    w2 = ctx.omega(("sq", 0), lambda: _square(ctx))
    return x4, y2, w2


def _kz1(ctx, p):
    c = _consts(p)
    x4, y2, w2 = _single_parts(ctx)
    return (2 + 4 * c.chi1) / 16 * x4 + c.chi2 / 4 * y2 * w2 + w2**2 / 8


def _b_kz_single_general(ctx, p, o, fg):
    return _kz1(ctx, p)


def _b_kz_single_alpha2(ctx, p, o, fg):
    if o.get("variant", "general") == "displayed":
        b = p.beta
        x4, y2, w2 = _single_parts(ctx)
        return (4 * b + 3) / (32 * (b + 1)) * x4 + (2 * b + 3) / (16 * (b + 1)) * y2 * w2 + w2**2 / 8
    return _kz1(ctx, p.with_(alpha=2))


def _b_khaddad(ctx, p, o, fg):
    return 0.5 * _single_sum(ctx, 4, 4)


def _b_domkit(ctx, p, o, fg):
    x4, y2, w2 = _single_parts(ctx)
    return 3 / 8 * x4 + 1 / 8 * y2 * w2


def _pvs1(ctx, p):
    c = _consts(p)
    mu = p.mu
    x4, y2, w2 = _single_parts(ctx)
    return (
        (1 + c.chi1 + c.chi3) / 8 * x4
        + (c.chi2 + mu * c.chi4) / 8 * y2 * w2
        + (1 + (1 - mu) * c.chi4) / 4 * w2**2
    )


def _b_pvs_general(ctx, p, o, fg):
    return _pvs1(ctx, p)


def _b_pvs_alpha2(ctx, p, o, fg):
    if o.get("variant", "general") == "displayed":
        b, mu = p.beta, p.mu
        x4, y2, w2 = _single_parts(ctx)
        return (
            (3 * b + 2) / (16 * (b + 1)) * x4
            + (2 * b + 2 * mu + 3) / (32 * (b + 1)) * y2 * w2
            + (3 - 2 * mu) / (16 * (b + 1)) * w2**2
        )
    return _pvs1(ctx, p.with_(alpha=2))


def _binomial_series(n, l1, l2, norm_at, w, ordering):
    """l1^n/2 N(n) + l2^n w^n + 1/2 sum_k C(n,k) coef_k N(n-k) w^k."""
    total = l1**n / 2 * norm_at(n) + l2**n * w**n
    for k in range(1, n):
        coef = l1 ** (n - k) * l2**k if ordering == "statement" else l1**k * l2 ** (n - k)
        total += 0.5 * math.comb(n, k) * coef * norm_at(n - k) * w**k
    return total


def _ordering(o):
    ordering = o.get("ordering", "statement")
    if ordering not in ("statement", "lemma"):
        raise ParamOutOfDomain(f"unknown ordering {ordering!r}")
    return ordering


def _b_seema9(ctx, p, o, fg):
    _need_n2(p)
    c = _consts(p)
    n, mu = int(p.n), p.mu
    return _binomial_series(
        n, c.lambda1, c.lambda2,
        lambda j: _pair_max(ctx, 4 * j * mu, 4 * j * (1 - mu)),
        _mu_omega_pair(ctx, mu), _ordering(o),
    )


def _b_mutah1(ctx, p, o, fg):
    _need_n2(p)
    c = _consts(p)
    n, mu = int(p.n), p.mu
    return _binomial_series(
        n, c.lambda1, c.lambda2,
        lambda j: _single_sum(ctx, 4 * j * mu, 4 * j * (1 - mu)),
        _mu_omega_single(ctx, mu), _ordering(o),
    )


def _b_ineq91(ctx, p, o, fg):
    c = _consts(p)
    l1, l2 = c.lambda1, c.lambda2
    w = _mu_omega_single(ctx, 0.5)
    first = l1**2 if o.get("variant", "proof") == "displayed" else l1**2 / 2
    return first * _single_sum(ctx, 4, 4) + l2**2 * w**2 + l1 * l2 * _single_sum(ctx, 2, 2) * w


def _b_binom_pq(ctx, p, o, fg):
    _need_n2(p)
    fg = _fg(p, fg)
    n, pp, qq = int(p.n), p.p, p.q
    _bc(ctx)

    def pn(j):
        return _pair_max(ctx, j * pp, j * qq, 1 / pp, 1 / qq)

    def fn(j):
        a = ctx.norm(("bpq", fg.tag, j, pp, "BC"), lambda: fg.f_abs(ctx, "BC", j * pp) / pp + fg.g_adj(ctx, "BC", j * qq) / qq)
        b = ctx.norm(("bpq", fg.tag, j, pp, "CB"), lambda: fg.f_abs(ctx, "CB", j * pp) / pp + fg.g_adj(ctx, "CB", j * qq) / qq)
        return max(a, b)

    total = pn(n) + fn(n)
    for k in range(1, n):
        total += math.comb(n, k) * pn(k) * fn(n - k)
    return total / 2**n


class _OffdiagView(EvalContext):
    """Context over the off-diagonal blocks [B, C] of a 2x2 block input."""

    def __init__(self, parent):
        self.input = parent.input
        self.mats = (parent.mats[1], parent.mats[2])
        self._memo = parent.memo(("offdiag-view",), dict)


def _b_full_2x2(ctx, p, o, fg):
    _need_n2(p)
    c = _consts(p)
    n, mu = int(p.n), p.mu
    wa = max(ctx.omega(0), ctx.omega(3))
    sub = _OffdiagView(ctx)
    norm_at = lambda j: _pair_max(sub, 4 * j * mu, 4 * j * (1 - mu))  # noqa: E731
    w = _mu_omega_pair(sub, mu)
    ordering = _ordering(o)
    total = 2 ** (2 * n - 1) * wa ** (2 * n)
    total += 2 ** (2 * n - 2) * c.lambda1**n * norm_at(n)
    total += 2 ** (2 * n - 1) * c.lambda2**n * w**n
    for k in range(1, n):
        coef = c.lambda1 ** (n - k) * c.lambda2**k if ordering == "statement" else c.lambda1**k * c.lambda2 ** (n - k)
        total += 2 ** (2 * n - 2) * math.comb(n, k) * coef * norm_at(n - k) * w**k
    return total


def _x_max(ctx, r):
    return max(ctx.norm(2), ctx.norm(3)) ** r


def _b_weighted_alpha(ctx, p, o, fg):
    _need_pr_qr(p)
    a, r, pp, qq = p.lambda_exp, p.r, p.p, p.q
    # inputs [A1, A2, X1, X2, B1, B2]
    n1 = ctx.norm(("wpa", 1, r, pp), lambda: ctx.absp(0, pp * r) / pp + ctx.absp(4, qq * r) / qq)
    n2 = ctx.norm(("wpa", 2, r, pp), lambda: ctx.absp(1, pp * r) / pp + ctx.absp(5, qq * r) / qq)
    return _x_max(ctx, r) * max(n1**a, n2**a)


def _b_weighted_split(ctx, p, o, fg):
    _need_r2(p)
    a, r = p.lambda_exp, p.r
    n2 = ctx.norm(("wps", 2, r, a), lambda: a * ctx.absp(1, r) + (1 - a) * ctx.absp(5, r))
    n1 = ctx.norm(("wps", 1, r, a), lambda: a * ctx.absp(0, r) + (1 - a) * ctx.absp(4, r))
    return _x_max(ctx, r) * max(n2, n1)


def _psd_pow(ctx, key, r):
    return ctx.memo(("psdpow", key, r), lambda: mf.matrix_power_psd(ctx.get(key), r))


def _b_half_power_1(ctx, p, o, fg):
    _need_r2(p)
    r = p.r
    w = [ctx.omega(("hp1", i, r), lambda i=i: (_psd_pow(ctx, i, r) + _psd_pow(ctx, 4 + i, r)) / 2) for i in (0, 1)]
    return _x_max(ctx, r) * max(w)


def _hp_mix(ctx, i, r, a, kind):
    def build():
        return a * _psd_pow(ctx, i, r) + (1 - a) * _psd_pow(ctx, 4 + i, r)

    fn = ctx.omega if kind == "omega" else ctx.norm
    return fn(("hpmix", kind, i, r, a), build)


def _b_half_power_2(ctx, p, o, fg):
    _need_r2(p)
    r, a = p.r, p.lambda_exp
    terms = [_hp_mix(ctx, i, r, a, "omega") + _hp_mix(ctx, i, r, 1 - a, "omega") for i in (0, 1)]
    return 0.5 * _x_max(ctx, r) * max(terms)


def _b_half_power_3(ctx, p, o, fg):
    _need_r2(p)
    r, a = p.r, p.lambda_exp
    first = max(_hp_mix(ctx, i, r, a, "norm") for i in (0, 1))
    second = max(_hp_mix(ctx, i, r, 1 - a, "norm") for i in (0, 1))
    return 0.5 * _x_max(ctx, r) * (first + second)


def _b_sum_product(ctx, p, o, fg):
    _need_pr_qr(p)
    fg = _fg(p, fg)
    r, pp, qq = p.r, p.p, p.q
    k = len(ctx.mats) // 3

    def build():
        left = sum(ctx.mats[3 * i + 2].conj().T @ fg.f_abs(ctx, 3 * i + 1, 2) @ ctx.mats[3 * i + 2] for i in range(k))
        right = sum(ctx.mats[3 * i].conj().T @ fg.g_adj(ctx, 3 * i + 1, 2) @ ctx.mats[3 * i] for i in range(k))
        return mf.matrix_power_psd(left, pp * r / 2) / pp + mf.matrix_power_psd(right, qq * r / 2) / qq

    return ctx.omega(("sumprod", fg.tag, r, pp), build)


# targets -----------------------------------------------------------------

def _t_self(ctx, p):
    return ctx.get(0)


def _t_dragomir(ctx, p):
    return ctx.get("SstarT", lambda: ctx.mats[1].conj().T @ ctx.mats[0])


def _t_offdiag(ctx, p):
    return _offdiag_target(ctx)


def _t_full(ctx, p):
    return ctx.get("full", lambda: block_compose("full-nxn", ctx.mats))


def _t_single_row(ctx, p):
    return ctx.get("row", lambda: block_compose("single-row", ctx.mats))


def _abs_offdiag_power(ctx, which, e):
    # |[[0, M1], [M2, 0]]| = diag(|M2|, |M1|)
    i1, i2 = (0, 1) if which == "A" else (4, 5)
    return block_compose("diag", [ctx.absp(i2, e), ctx.absp(i1, e)])


def _y_offdiag(ctx):
    return ctx.get("Y", lambda: block_compose("offdiag", [ctx.mats[2], ctx.mats[3]]))


def _t_weighted_alpha(ctx, p):
    a = p.lambda_exp
    return ctx.get(("wpa-target", a), lambda: _abs_offdiag_power(ctx, "A", a) @ _y_offdiag(ctx) @ _abs_offdiag_power(ctx, "B", a))


def _t_weighted_split(ctx, p):
    a = p.lambda_exp
    return ctx.get(
        ("wps-target", a), lambda: _abs_offdiag_power(ctx, "A", a) @ _y_offdiag(ctx) @ _abs_offdiag_power(ctx, "B", 1 - a)
    )


def _t_half_power(ctx, p):
    def build():
        ah = block_compose("diag", [mf.matrix_power_psd(ctx.mats[0], 0.5), mf.matrix_power_psd(ctx.mats[1], 0.5)])
        bh = block_compose("diag", [mf.matrix_power_psd(ctx.mats[4], 0.5), mf.matrix_power_psd(ctx.mats[5], 0.5)])
        y = block_compose("diag", [ctx.mats[2], ctx.mats[3]])
        return ah @ y @ bh

    return ctx.get("hp-target", build)


def _t_sum_product(ctx, p):
    k = len(ctx.mats) // 3
    return ctx.get("sp-target", lambda: sum(ctx.mats[3 * i].conj().T @ ctx.mats[3 * i + 1] @ ctx.mats[3 * i + 2] for i in range(k)))


# registry ----------------------------------------------------------------

@dataclass(frozen=True)
class _Entry:
    desc: BoundDescriptor
    fn: Callable
    target: Callable
    checks: tuple = field(default=())


_AB = ("alpha", "beta")
_ENTRIES = {}


def _add(id, shape, params, k, fn, target, citation, inputs, target_doc, side=UPPER, constraints=(), quantity="omega",
         fg=False, options=()):
    desc = BoundDescriptor(
        id=id, input_shape=shape, params=tuple(params), side=side, omega_exponent=k, citation=citation,
        inputs=inputs, target=target_doc, constraints=tuple(constraints), quantity=quantity, accepts_fg=fg,
        options=tuple(options),
    )
    _ENTRIES[id] = _Entry(desc, fn, target)


_add("norm-upper", "single", (), 1, _b_norm_upper, _t_self,
     "omega(A) <= ||A||", "A", "A")
_add("norm-lower", "single", (), 1, _b_norm_lower, _t_self,
     "||A||/2 <= omega(A)", "A", "A", side=LOWER)
_add("kittaneh-lower", "single", (), 2, _b_kitt_lower, _t_self,
     "Kittaneh lower bound ||(|A|^2+|A*|^2)||/4 <= omega^2(A)", "A", "A", side=LOWER)
_add("kittaneh-upper", "single", (), 2, _b_kitt_upper, _t_self,
     "Kittaneh upper bound omega^2(A) <= ||(|A|^2+|A*|^2)||/2", "A", "A")
_add("el-haddad-kittaneh", "single", ("r",), "2r", _b_el_haddad, _t_self,
     "El-Haddad-Kittaneh power bound", "A", "A")
_add("dragomir-product", "pair", ("r",), "r", _b_dragomir, _t_dragomir,
     "Dragomir bound for products S*T", "T S", "S* T")
_add("hou-blocknorm", "blocksNxN", (), 1, _b_hou, _t_full,
     "Hou block-norm comparison, numerical radius", "S11 S12 ... Snn (row-major)", "[S_ij]")
_add("hou-blocknorm-norm", "blocksNxN", (), 1, _b_hou_norm, _t_full,
     "Hou block-norm comparison, operator norm", "S11 S12 ... Snn (row-major)", "[S_ij]", quantity="norm")
_add("hou-blocknorm-specrad", "blocksNxN", (), 1, _b_hou_specrad, _t_full,
     "Hou block-norm comparison, spectral radius", "S11 S12 ... Snn (row-major)", "[S_ij]", quantity="specrad")
_add("bani-domi-kittaneh", "blocksNxN", (), 1, _b_bani_domi, _t_full,
     "Bani-Domi-Kittaneh comparison matrix", "S11 S12 ... Snn (row-major)", "[S_ij]")
_add("abu-omar-kittaneh", "blocksNxN", (), 1, _b_abu_omar, _t_full,
     "Abu-Omar-Kittaneh comparison matrix", "T11 T12 ... Tnn (row-major)", "[T_ij]")
_add("af-offdiag", "blocksNxN", (), 1, _b_af_offdiag, _t_full,
     "Abu-Omar-Kittaneh comparison with off-diagonal pairs", "S11 S12 ... Snn (row-major)", "[S_ij]")
_add("single-row", "single_row", (), 1, _b_single_row, _t_single_row,
     "single non-zero block row", "S1 S2 ... Sn", "first block row [S1 ... Sn]", options=("variant=proof|displayed",))
_add("comparison-fg", "blocksNxN", ("s", "lambda_exp"), "s", _b_comparison_fg, _t_full,
     "n x n comparison matrix with f,g diagonal entries", "S11 S12 ... Snn (row-major)", "[S_ij]", fg=True)
_add("comparison-2x2", "blocksNxN", ("s", "lambda_exp"), "s", _b_comparison_2x2, _t_full,
     "closed form of the 2 x 2 comparison bound", "S11 S12 S21 S22", "[[S11, S12], [S21, S22]]", fg=True)
_add("offdiag-fg", "pair", ("r", "lambda_exp"), "r", _b_offdiag_fg, _t_offdiag,
     "off-diagonal f,g product bound", "B C", "[[0, B], [C, 0]]", fg=True)
_add("moby-a1", "pair", _AB, 4, _b_moby_a1, _t_offdiag,
     "off-diagonal bound with delta constants", "B C", "[[0, B], [C, 0]]")
_add("moby-a2", "single", _AB, 4, _b_moby_a2, _t_self,
     "delta-constant bound, B = C", "M", "M")
_add("ramadan1", "pair", ("beta", "r"), "4r", _b_ramadan1, _t_offdiag,
     "off-diagonal bound with gamma constants", "B C", "[[0, B], [C, 0]]")
_add("ramadan1-single", "single", ("beta", "r"), "4r", _b_ramadan1_single, _t_self,
     "gamma-constant bound, B = C", "M", "M")
_add("malik-a1", "pair", ("beta", "r", "p", "q", "lambda_exp"), "4r", _b_malik_a1, _t_offdiag,
     "off-diagonal f,g bound with conjugate exponents", "B C", "[[0, B], [C, 0]]",
     constraints=("p*r >= 2", "q*r >= 2"), fg=True)
_add("cor3.18", "single", ("beta", "r", "lambda_exp"), "4r", _b_cor318, _t_self,
     "power-pair specialization of the conjugate-exponent bound, B = C, p = q = 2", "M", "M")
_add("chi-mu-offdiag", "pair", _AB + ("mu",), 4, _b_chi_mu_offdiag, _t_offdiag,
     "off-diagonal bound with chi constants and weight mu", "B C", "[[0, B], [C, 0]]")
_add("chi-mu-single", "single", _AB + ("mu",), 4, _b_chi_mu_single, _t_self,
     "chi/mu bound, B = C", "M", "M")
_add("kz", "blocks2x2", _AB, 4, _b_kz, _t_full,
     "general 2 x 2 bound via [[0, XS], [YT, 0]]", "T X Y S", "[[T, X], [Y, S]]")
_add("kz-single-general", "single", _AB, 4, _b_kz_single_general, _t_self,
     "single-operator form of the general 2 x 2 bound", "T", "T")
_add("kz-single-alpha2", "single", ("beta",), 4, _b_kz_single_alpha2, _t_self,
     "single-operator form at alpha = 2", "T", "T", options=("variant=general|displayed",))
_add("khaddad-ref", "single", (), 4, _b_khaddad, _t_self,
     "reference bound omega^4 <= ||(|T|^4+|T*|^4)||/2", "T", "T")
_add("domkit-ref", "single", (), 4, _b_domkit, _t_self,
     "reference refinement 3/8 ||.|| + 1/8 ||.|| omega(T^2)", "T", "T")
_add("modified-kz", "blocks2x2", _AB + ("mu",), 4, _b_modified_kz, _t_full,
     "modified general 2 x 2 bound with chi1..chi4", "T X Y S", "[[T, X], [Y, S]]")
_add("pvs-single-general", "single", _AB + ("mu",), 4, _b_pvs_general, _t_self,
     "single-operator form of the modified 2 x 2 bound", "T", "T")
_add("pvs-single-alpha2", "single", ("beta", "mu"), 4, _b_pvs_alpha2, _t_self,
     "single-operator modified bound at alpha = 2", "T", "T", options=("variant=general|displayed",))
_add("seema9", "pair", _AB + ("mu", "n"), "2n", _b_seema9, _t_offdiag,
     "binomial off-diagonal bound with lambda constants", "B C", "[[0, B], [C, 0]]",
     constraints=("n >= 2",), options=("ordering=statement|lemma",))
_add("mutah1", "single", _AB + ("mu", "n"), "2n", _b_mutah1, _t_self,
     "binomial lambda-constant bound, B = C", "B", "B", constraints=("n >= 2",), options=("ordering=statement|lemma",))
_add("ineq9.1", "single", _AB, 4, _b_ineq91, _t_self,
     "binomial bound at n = 2, mu = 1/2", "B", "B", options=("variant=proof|displayed",))
_add("binom-pq", "pair", ("n", "p", "q", "lambda_exp"), "2n", _b_binom_pq, _t_offdiag,
     "binomial off-diagonal bound with conjugate exponents", "B C", "[[0, B], [C, 0]]",
     constraints=("n >= 2",), fg=True)
_add("full-2x2-2n", "blocks2x2", _AB + ("mu", "n"), "2n", _b_full_2x2, _t_full,
     "full 2 x 2 bound of order 2n", "A B C D", "[[A, B], [C, D]]",
     constraints=("n >= 2",), options=("ordering=statement|lemma",))
_add("weighted-product-alpha", "triple_AXB", ("r", "p", "q", "lambda_exp"), "r", _b_weighted_alpha, _t_weighted_alpha,
     "weighted product |A|^a Y |B|^a with off-diagonal A, Y, B", "A1 A2 X1 X2 B1 B2",
     "|[[0,A1],[A2,0]]|^a [[0,X1],[X2,0]] |[[0,B1],[B2,0]]|^a (a = lambda_exp)",
     constraints=("p*r >= 2", "q*r >= 2"))
_add("weighted-product-split", "triple_AXB", ("r", "lambda_exp"), "r", _b_weighted_split, _t_weighted_split,
     "weighted product |A|^a Y |B|^(1-a) with off-diagonal A, Y, B", "A1 A2 X1 X2 B1 B2",
     "|[[0,A1],[A2,0]]|^a [[0,X1],[X2,0]] |[[0,B1],[B2,0]]|^(1-a) (a = lambda_exp)", constraints=("r >= 2",))
_add("half-power-chain", "triple_AXB", ("r",), "r", _b_half_power_1, _t_half_power,
     "A^(1/2) Y B^(1/2) with block-diagonal PSD A, B: first bound", "A1 A2 X1 X2 B1 B2 (A_i, B_i PSD)",
     "diag(A1,A2)^(1/2) diag(X1,X2) diag(B1,B2)^(1/2)", constraints=("r >= 2",))
_add("half-power-chain-2", "triple_AXB", ("r", "lambda_exp"), "r", _b_half_power_2, _t_half_power,
     "A^(1/2) Y B^(1/2): second bound (weighted split)", "A1 A2 X1 X2 B1 B2 (A_i, B_i PSD)",
     "diag(A1,A2)^(1/2) diag(X1,X2) diag(B1,B2)^(1/2)", constraints=("r >= 2",))
_add("half-power-chain-3", "triple_AXB", ("r", "lambda_exp"), "r", _b_half_power_3, _t_half_power,
     "A^(1/2) Y B^(1/2): third bound (norms)", "A1 A2 X1 X2 B1 B2 (A_i, B_i PSD)",
     "diag(A1,A2)^(1/2) diag(X1,X2) diag(B1,B2)^(1/2)", constraints=("r >= 2",))
_add("sum-product", "triple_list", ("r", "p", "q", "lambda_exp"), "r", _b_sum_product, _t_sum_product,
     "sum of products A_i* X_i B_i", "A1 X1 B1 A2 X2 B2 ...", "sum_i A_i* X_i B_i",
     constraints=("p*r >= 2", "q*r >= 2"), fg=True)


def list_bounds() -> list:
    return [e.desc for e in _ENTRIES.values()]


def get_descriptor(bound_id: str) -> BoundDescriptor:
    return _entry(bound_id).desc


def _entry(bound_id):
    try:
        return _ENTRIES[bound_id]
    except KeyError:
        raise UnknownBound(f"unknown bound id {bound_id!r}") from None


def _as_input(desc, inp):
    if isinstance(inp, BoundInput):
        if inp.shape != desc.input_shape:
            raise ShapeMismatch(f"{desc.id} expects input shape {desc.input_shape}, got {inp.shape}")
        return inp
    if isinstance(inp, np.ndarray) and inp.ndim == 2:
        inp = [inp]
    return BoundInput.of(desc.input_shape, inp)


def make_context(bound_id: str, inp) -> EvalContext:
    """Validated evaluation context for ``inp``; reusable across parameter values."""
    desc = _entry(bound_id).desc
    inp = _as_input(desc, inp)
    _validate(desc, inp)
    return EvalContext(inp)


def _resolve(bound_id, inp, ctx):
    entry = _entry(bound_id)
    if ctx is None:
        ctx = make_context(bound_id, inp)
    elif ctx.input.shape != entry.desc.input_shape:
        raise ShapeMismatch(f"{bound_id} expects input shape {entry.desc.input_shape}, got {ctx.input.shape}")
    else:
        _validate(entry.desc, ctx.input)
    return entry, ctx


def evaluate_bound(bound_id: str, inp=None, params: Optional[BoundParams] = None, *, fg=None, ctx=None, **options) -> float:
    """Right-hand side of the inequality ``bound_id`` on ``inp``.

    ``fg`` may be a :class:`FunctionPair` for entries with ``accepts_fg``;
    it replaces the power pair and ``lambda_exp`` is then not required.
    ``options`` select documented evaluation variants (``variant``,
    ``ordering``).
    """
    entry, ctx = _resolve(bound_id, inp, ctx)
    desc = entry.desc
    params = params if params is not None else BoundParams()
    needed = desc.params
    if fg is not None:
        if not desc.accepts_fg:
            raise ParamOutOfDomain(f"{bound_id} does not accept general f,g")
        needed = tuple(n for n in needed if n != "lambda_exp")
    require(params, needed)
    allowed = {o.split("=")[0] for o in desc.options}
    unknown = set(options) - allowed
    if unknown:
        raise ParamOutOfDomain(f"{bound_id} has no option(s) {sorted(unknown)}")
    return float(entry.fn(ctx, params, options, fg))


def _target_quantity(entry, ctx, params):
    desc = entry.desc
    key = ("target", desc.id, params.lambda_exp if desc.input_shape == "triple_AXB" else None)

    def compute():
        t = entry.target(ctx, params)
        if desc.quantity == "norm":
            return mf.op_norm(t)
        if desc.quantity == "specrad":
            return mf.spectral_radius(t)
        return omega(t)

    return ctx.memo(key, compute)


@dataclass(frozen=True)
class CheckRecord:
    bound_id: str
    omega_power: float
    bound: float
    slack: float
    holds: bool


def holds(side: str, omega_power: float, bound: float) -> bool:
    if side == UPPER:
        return omega_power <= bound * (1 + REL_TOL) + ABS_TOL
    return omega_power >= bound * (1 - REL_TOL) - ABS_TOL


def check_bound(bound_id: str, inp=None, params: Optional[BoundParams] = None, *, fg=None, ctx=None, **options) -> CheckRecord:
    """Evaluate both sides.  ``slack`` is non-negative exactly when the inequality holds without tolerance."""
    entry, ctx = _resolve(bound_id, inp, ctx)
    params = params if params is not None else BoundParams()
    b = evaluate_bound(bound_id, params=params, fg=fg, ctx=ctx, **options)
    k = entry.desc.power(params)
    wp = _target_quantity(entry, ctx, params) ** k
    slack = b - wp if entry.desc.side == UPPER else wp - b
    return CheckRecord(bound_id, float(wp), b, float(slack), holds(entry.desc.side, wp, b))


def target_matrix(bound_id: str, inp, params: Optional[BoundParams] = None) -> np.ndarray:
    entry, ctx = _resolve(bound_id, inp, None)
    return entry.target(ctx, params if params is not None else BoundParams())


# refinement chains -------------------------------------------------------

@dataclass(frozen=True)
class Chain:
    """Steps that must be nondecreasing on every shared input.

    A step is a bound id, optionally suffixed ``^k`` to raise its value
    to the k-th power.  ``fixed`` parameters override the caller's.
    """

    name: str
    steps: tuple
    input_shape: str
    params: tuple
    fixed: dict = field(default_factory=dict)

    def evaluate(self, inp, params: Optional[BoundParams] = None) -> list:
        params = (params or BoundParams()).with_(**self.fixed)
        out = []
        ctx = None
        for step in self.steps:
            bid, _, power = step.partition("^")
            if ctx is None:
                ctx = make_context(bid, inp)
            v = evaluate_bound(bid, params=params, ctx=ctx)
            out.append(v ** float(power) if power else v)
        return out


_CHAINS = (
    Chain("moby-a2-vs-kittaneh", ("moby-a2", "kittaneh-upper^2"), "single", ("beta",), {"alpha": 2}),
    Chain("kz2-kz4-kz3", ("kz-single-alpha2", "domkit-ref", "khaddad-ref"), "single", ("beta",)),
    Chain("ineq9.1-vs-kz3", ("ineq9.1", "khaddad-ref"), "single", (), {"alpha": 2, "beta": 0.0}),
    Chain("half-power", ("half-power-chain", "half-power-chain-2", "half-power-chain-3"), "triple_AXB",
          ("r", "lambda_exp")),
)


def refinement_chains() -> list:
    return list(_CHAINS)


def is_nondecreasing(values, rtol: float = REL_TOL) -> bool:
    return all(a <= b * (1 + rtol) + ABS_TOL for a, b in zip(values, values[1:]))


# transform lemma ---------------------------------------------------------

@dataclass(frozen=True)
class TransformRecord:
    lhs: float
    rhs: float
    r: float
    holds: bool


def similarity_transform_bound(k, p, q, r: float = 1.0) -> TransformRecord:
    """``omega(K) <= omega((P K Q^-1 + P^-1 K Q)/2)`` for invertible self-adjoint ``P, Q``."""
    if r < 1:
        raise ParamOutOfDomain("r must be >= 1")
    km = mf.as_matrix(k)
    mats = []
    for name, m in (("P", p), ("Q", q)):
        m = mf.as_matrix(m)
        try:
            h = mf.symmetrize(m)
        except mf.NonHermitian as exc:
            raise NotSelfAdjoint(f"{name} is not self-adjoint") from exc
        if np.min(np.abs(np.linalg.eigvalsh(h))) <= 1e-10:
            raise NotInvertible(f"{name} is not invertible")
        if h.shape != km.shape:
            raise ShapeMismatch(f"{name} shape {h.shape} does not match K {km.shape}")
        mats.append(h)
    pm, qm = mats
    pinv, qinv = np.linalg.inv(pm), np.linalg.inv(qm)
    lhs = omega(km)
    rhs = omega((pm @ km @ qinv + pinv @ km @ qm) / 2)
    return TransformRecord(lhs, rhs, float(r), lhs <= rhs + 1e-8)


_CONSTRAINT_CHECKS = {
    "p*r >= 2": lambda p: p.p * p.r >= 2 - 1e-12,
    "q*r >= 2": lambda p: p.q * p.r >= 2 - 1e-12,
    "r >= 2": lambda p: p.r >= 2,
    "n >= 2": lambda p: p.n >= 2,
}


def in_domain(bound_id: str, params: BoundParams) -> bool:
    """True when ``params`` satisfy the descriptor's parameter domain."""
    desc = get_descriptor(bound_id)
    try:
        require(params, desc.params)
    except ParamOutOfDomain:
        return False
    return all(_CONSTRAINT_CHECKS[c](params) for c in desc.constraints)
