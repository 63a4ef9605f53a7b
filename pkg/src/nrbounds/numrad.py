"""Numerical radius of square complex matrices.

The main routine uses the rotated Hermitian part

    H(theta) = (exp(i theta) A + exp(-i theta) A*) / 2,
    omega(A) = max over theta of lambda_max(H(theta)),

evaluated on a fixed 64-point grid and refined by golden-section search on
the brackets of the three best grid points.  The refinement runs in
lockstep on all brackets, so results do not depend on evaluation order.
Exactly Hermitian input skips the sweep (its numerical radius is the
largest eigenvalue modulus), and so does entrywise non-negative input,
whose numerical radius is that of its Hermitian part.

:func:`numerical_radius_oracle` is an independent check that never touches
an eigensolver for non-normal input: random sampling of the unit sphere
followed by BFGS ascent of ``|<Ax, x>|**2``.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy import optimize

from .errors import NegativeEntry, NonConvergence, NonSquare, ShapeMismatch
from .matfun import adjoint, as_matrix, is_normal, op_norm, spectral_radius

GRID_POINTS = 64
N_BRACKETS = 3
# relative Frobenius asymmetry below which the input is treated as Hermitian
HERMITIAN_EXACT = 1e-14
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class NumRadResult(NamedTuple):
    value: float
    theta_star: float
    witness: np.ndarray
    iterations: int


def _square(a):
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"matrix must be square, got shape {m.shape}")
    return m


def _rotated(m, thetas, mh=None):
    e = np.exp(1j * np.asarray(thetas, dtype=float))[:, None, None]
    return (e * m + np.conj(e) * (adjoint(m) if mh is None else mh)) / 2


def _top_eigs(m, thetas, mh=None):
    return np.linalg.eigvalsh(_rotated(m, thetas, mh))[:, -1]


def _hermitian_case(m):
    # omega of a Hermitian matrix is its largest |eigenvalue|; theta is 0 or pi
    w, v = np.linalg.eigh((m + adjoint(m)) / 2)
    if w[-1] >= -w[0]:
        return NumRadResult(float(w[-1]), 0.0, _phase_normalize(v[:, -1]), 0)
    return NumRadResult(float(-w[0]), float(np.pi), _phase_normalize(v[:, 0]), 0)


def _phase_normalize(v):
    mags = np.abs(v)
    idx = int(np.argmax(mags > 1e-12 * mags.max()))
    return v * (np.conj(v[idx]) / mags[idx])


def numerical_radius(a, rtol: float = 1e-10, method: str = "auto") -> NumRadResult:
    """Numerical radius ``sup |<Ax, x>|`` over unit vectors ``x``.

    Parameters
    ----------
    a : array_like
        Square complex matrix.
    rtol : float
        Width of the final theta bracket.
    method : {"auto", "sweep"}
        ``"sweep"`` disables the Hermitian and non-negative shortcuts.

    Returns
    -------
    NumRadResult
        ``value``, the maximizing angle ``theta_star`` in ``[0, 2 pi)``,
        a unit ``witness`` vector with ``|<A w, w>| == value`` and the number
        of golden-section iterations.
    """
    m = _square(a)
    n = m.shape[0]
    if n == 1:
        z = m[0, 0]
        theta = float((-np.angle(z)) % (2 * np.pi)) if z != 0 else 0.0
        return NumRadResult(float(abs(z)), theta, np.ones(1, dtype=complex), 0)

    if method not in ("auto", "sweep"):
        raise ValueError(f"unknown method {method!r}")
    mh = adjoint(m)
    if method == "auto":
        if np.linalg.norm(m - mh) <= HERMITIAN_EXACT * np.linalg.norm(m):
            return _hermitian_case(m)
        if not np.any(m.imag) and np.all(m.real >= 0):
            # entrywise non-negative: theta = 0 is optimal, |<Ax,x>| <= <A|x|,|x|>
            return _hermitian_case(m)

    step = 2 * np.pi / GRID_POINTS
    grid = step * np.arange(GRID_POINTS)
    gvals = _top_eigs(m, grid, mh)

    order = np.argsort(-gvals, kind="stable")[:N_BRACKETS]
    lo = grid[order] - step
    hi = grid[order] + step
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc = _top_eigs(m, c, mh)
    fd = _top_eigs(m, d, mh)
    iterations = 0
    while np.max(hi - lo) > rtol:
        iterations += 1
        if iterations > 200:
            raise NonConvergence("golden-section refinement did not converge")
        keep_left = fc >= fd
        hi = np.where(keep_left, d, hi)
        lo = np.where(keep_left, lo, c)
        new_c = hi - _INVPHI * (hi - lo)
        new_d = lo + _INVPHI * (hi - lo)
        probe = np.where(keep_left, new_c, new_d)
        fp = _top_eigs(m, probe, mh)
        c, d, fc, fd = (
            np.where(keep_left, new_c, d),
            np.where(keep_left, c, new_d),
            np.where(keep_left, fp, fd),
            np.where(keep_left, fc, fp),
        )

    thetas = np.concatenate([grid, c, d]) % (2 * np.pi)
    values = np.concatenate([gvals, fc, fd])
    best = values.max()
    near = values >= best - rtol * max(1.0, abs(best))
    theta_star = float(thetas[near].min())

    w, v = np.linalg.eigh(_rotated(m, [theta_star])[0])
    value = float(max(w[-1], best))
    witness = _phase_normalize(v[:, -1])

    norm = op_norm(m)
    tol = 1e-8 * (1.0 + norm)
    if not (0.5 * norm - tol <= value <= norm + tol):
        raise NonConvergence(f"value {value} outside [||A||/2, ||A||] = [{norm / 2}, {norm}]")
    return NumRadResult(value, theta_star, witness, iterations)


def omega(a, rtol: float = 1e-10, method: str = "auto") -> float:
    """Shorthand for ``numerical_radius(a).value``."""
    return numerical_radius(a, rtol, method).value


def _neg_objective(m, n):
    mh = adjoint(m)

    def fun(p):
        x = p[:n] + 1j * p[n:]
        nrm = np.vdot(x, x).real
        ax = m @ x
        z = np.vdot(x, ax)
        val = abs(z) ** 2 / nrm**2
        g = (np.conj(z) * ax + z * (mh @ x)) / nrm**2 - 2 * abs(z) ** 2 * x / nrm**3
        grad = np.concatenate([2 * g.real, 2 * g.imag])
        return -val, -grad

    return fun


def numerical_radius_oracle(a, samples: int = 100_000, seed: int = 0, starts: int = 16) -> float:
    """Sampling lower estimate of the numerical radius.

    Normal matrices short-circuit to ``max |eigenvalue|``.  Otherwise
    ``samples`` uniform unit vectors are drawn.  The phase of
    ``<Ax, x>`` is split into ``starts`` bins and the best sample of each
    bin is polished by BFGS on the sphere, so distinct local maxima get
    their own start.  The result is an attained value of ``|<Ax, x>|`` and
    therefore never exceeds the true numerical radius beyond rounding.
    """
    m = _square(a)
    n = m.shape[0]
    if is_normal(m):
        return spectral_radius(m)
    rng = np.random.default_rng(seed)
    chunk = 20_000
    best_vals = np.full(starts, -1.0)
    best_vecs = np.zeros((starts, n), dtype=complex)
    remaining = samples
    while remaining > 0:
        k = min(chunk, remaining)
        remaining -= k
        x = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        q = np.einsum("ki,ki->k", np.conj(x), x @ m.T)
        vals = np.abs(q)
        bins = np.minimum(((np.angle(q) + math.pi) / (2 * math.pi) * starts).astype(int), starts - 1)
        for b in range(starts):
            idx = np.flatnonzero(bins == b)
            if idx.size:
                j = idx[np.argmax(vals[idx])]
                if vals[j] > best_vals[b]:
                    best_vals[b], best_vecs[b] = vals[j], x[j]
    keep = best_vals >= 0
    best_vals, best_vecs = best_vals[keep], best_vecs[keep]

    fun = _neg_objective(m, n)
    result = float(best_vals.max())
    for x0 in best_vecs:
        p0 = np.concatenate([x0.real, x0.imag])
        res = optimize.minimize(fun, p0, jac=True, method="BFGS", options={"gtol": 1e-13, "maxiter": 2000})
        result = max(result, math.sqrt(max(-res.fun, 0.0)))
    return result


def nr_2x2_nonneg(a: float, b: float, c: float, d: float) -> float:
    """Closed-form numerical radius of ``[[a, c], [d, b]]`` with entries >= 0."""
    if min(a, b, c, d) < 0:
        raise NegativeEntry("all entries must be non-negative")
    return (abs(a + b) + math.sqrt((a - b) ** 2 + (c + d) ** 2)) / 2


def _nonneg_real(a):
    m = as_matrix(a)
    if np.any(m.imag != 0) or np.any(m.real < 0):
        raise NegativeEntry("matrix must be entrywise real and non-negative")
    return m.real


def horn_bound(a) -> float:
    """``r(A + A^T) / 2`` for an entrywise non-negative square matrix."""
    m = _nonneg_real(a)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"matrix must be square, got shape {m.shape}")
    return 0.5 * spectral_radius(m + m.T)


BLOCK_KINDS = ("diag", "offdiag", "symmetric-pair", "full-2x2", "full-nxn", "single-row")


def block_compose(kind: str, blocks) -> np.ndarray:
    """Assemble a dense matrix from blocks.

    ``diag``: block diagonal of all blocks.  ``offdiag``: ``[B, C]`` gives
    ``[[0, B], [C, 0]]``.  ``symmetric-pair``: ``[T, S]`` gives
    ``[[T, S], [S, T]]``.  ``full-2x2``: ``[T, X, Y, S]`` row-major.
    ``full-nxn``: ``n*n`` blocks row-major.  ``single-row``: ``[S1, ..., Sn]``
    fill the first block row, the rest is zero.
    """
    mats = [as_matrix(b) for b in blocks]
    try:
        if kind == "diag":
            rows = []
            for i, bi in enumerate(mats):
                rows.append([bi if i == j else np.zeros((bi.shape[0], bj.shape[1])) for j, bj in enumerate(mats)])
            out = np.block(rows)
        elif kind == "offdiag":
            if len(mats) != 2:
                raise ShapeMismatch("offdiag takes exactly two blocks")
            b, c = mats
            if b.shape != c.shape[::-1]:
                raise ShapeMismatch(f"offdiag blocks {b.shape} and {c.shape} are not conformable")
            out = np.block([[np.zeros((b.shape[0], c.shape[1])), b], [c, np.zeros((c.shape[0], b.shape[1]))]])
        elif kind == "symmetric-pair":
            if len(mats) != 2 or mats[0].shape != mats[1].shape:
                raise ShapeMismatch("symmetric-pair takes two blocks of equal shape")
            t, s = mats
            out = np.block([[t, s], [s, t]])
        elif kind in ("full-2x2", "full-nxn"):
            k = math.isqrt(len(mats))
            if k * k != len(mats) or (kind == "full-2x2" and k != 2):
                raise ShapeMismatch(f"{kind} needs a square number of blocks, got {len(mats)}")
            out = np.block([mats[i * k:(i + 1) * k] for i in range(k)])
        elif kind == "single-row":
            s1 = mats[0]
            if s1.shape[0] != s1.shape[1]:
                raise ShapeMismatch("leading block of a single-row matrix must be square")
            widths = [b.shape[1] for b in mats]
            if any(b.shape[0] != s1.shape[0] for b in mats):
                raise ShapeMismatch("single-row blocks must share the row count")
            zero_rows = [[np.zeros((widths[i], w)) for w in widths] for i in range(1, len(mats))]
            out = np.block([mats] + zero_rows)
        else:
            raise ValueError(f"unknown block kind {kind!r}")
    except ValueError as exc:
        if isinstance(exc, ShapeMismatch):
            raise
        if "unknown block kind" in str(exc):
            raise
        raise ShapeMismatch(str(exc)) from exc
    if out.shape[0] != out.shape[1]:
        raise ShapeMismatch(f"assembled matrix is not square: {out.shape}")
    return out.astype(complex)
