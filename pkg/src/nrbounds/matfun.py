"""Dense complex matrix primitives.

Everything here works on plain ``numpy`` arrays of dtype ``complex128``.
Hermitian inputs go through :func:`hermitian_eigs`, which symmetrizes tiny
round-off asymmetries and rejects anything worse.  Spectral functions of
positive semidefinite matrices clamp eigenvalues in ``[-1e-12, 0]`` to zero
and use the convention ``0**0 == 0``.
"""

from typing import Callable, NamedTuple

import numpy as np

from .errors import EigenFailure, NonFinite, NonHermitian, NonSquare, NotPSD

HERMITIAN_RTOL = 1e-10
PSD_ATOL = 1e-12

# singular values / eigenvalues below RANK_RTOL * largest are treated as exact zeros
RANK_RTOL = 64 * np.finfo(float).eps


class HermitianEigen(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise NonSquare(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix has NaN or Inf entries")
    return m


def _require_square(m):
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"matrix must be square, got shape {m.shape}")


def adjoint(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def symmetrize(a, rtol=HERMITIAN_RTOL) -> np.ndarray:
    """Return ``(A + A*)/2`` after checking ``A`` is Hermitian up to ``rtol``."""
    m = as_matrix(a)
    _require_square(m)
    scale = np.linalg.norm(m, 2)
    if np.linalg.norm(m - adjoint(m), 2) > rtol * max(scale, 1e-300):
        raise NonHermitian("matrix is not Hermitian within tolerance")
    return (m + adjoint(m)) / 2


def hermitian_eigs(a, rtol=HERMITIAN_RTOL) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = symmetrize(a, rtol)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return HermitianEigen(w, v)


def _psd_spectrum(a):
    w, v = hermitian_eigs(a)
    top = max(abs(w[-1]), abs(w[0]))
    if w[0] < -PSD_ATOL * max(1.0, top):
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is negative")
    w = np.clip(w, 0.0, None)
    w[w <= RANK_RTOL * w.size * top] = 0.0
    return w, v


def _power(w, exponent):
    if exponent == 0:
        return (w > 0).astype(float)
    return w ** exponent


def _assemble(w, v):
    return (v * w) @ adjoint(v)


def matrix_func(a, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Spectral function ``f(A)`` of a positive semidefinite ``A``.

    ``f`` is applied elementwise to the (clamped) eigenvalues and must be
    finite there.
    """
    w, v = _psd_spectrum(a)
    fw = np.asarray(f(w), dtype=float)
    if fw.shape != w.shape or not np.all(np.isfinite(fw)):
        raise NonFinite("spectral function is not finite on the spectrum")
    return _assemble(fw, v)


def matrix_power_psd(a, exponent: float) -> np.ndarray:
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    w, v = _psd_spectrum(a)
    return _assemble(_power(w, float(exponent)), v)


def _svd(a):
    m = as_matrix(a)
    try:
        u, s, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    s = s.copy()
    if s.size:
        s[s <= RANK_RTOL * max(m.shape) * s[0]] = 0.0
    return m, u, s, vh


class AbsPowers:
    """One SVD of ``A`` reused for any number of ``|A|**p`` and ``|A*|**p``."""

    def __init__(self, a):
        m, u, s, vh = _svd(a)
        self.shape = m.shape
        self._u = u
        self._v = adjoint(vh)
        self._right = np.zeros(m.shape[1])
        self._right[: s.size] = s
        self._left = np.zeros(m.shape[0])
        self._left[: s.size] = s
        self.singular_values = s

    def abs(self, exponent: float) -> np.ndarray:
        """``|A|**exponent``, shape cols x cols."""
        return _assemble(_power(self._right, float(exponent)), self._v)

    def adj(self, exponent: float) -> np.ndarray:
        """``|A*|**exponent``, shape rows x rows."""
        return _assemble(_power(self._left, float(exponent)), self._u)


def matrix_abs(a) -> np.ndarray:
    """``|A| = (A*A)^(1/2)``, shape cols x cols."""
    return AbsPowers(a).abs(1.0)


def abs_power(a, exponent: float) -> np.ndarray:
    """``|A|**exponent`` computed from the SVD of ``A``."""
    return AbsPowers(a).abs(exponent)


def abs_adj_power(a, exponent: float) -> np.ndarray:
    """``|A*|**exponent``, shape rows x rows."""
    return AbsPowers(a).adj(exponent)


def op_norm(a) -> float:
    m = as_matrix(a)
    return float(np.linalg.norm(m, 2))


def spectral_radius(a) -> float:
    m = as_matrix(a)
    _require_square(m)
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(str(exc)) from exc
    return float(np.max(np.abs(ev)))


def is_normal(a, rtol=1e-10) -> bool:
    m = as_matrix(a)
    _require_square(m)
    scale = op_norm(m) ** 2
    comm = m @ adjoint(m) - adjoint(m) @ m
    return bool(np.linalg.norm(comm, 2) <= rtol * max(scale, 1e-300))
