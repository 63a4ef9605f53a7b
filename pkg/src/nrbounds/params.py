"""Free parameters of the bound catalog and the constants derived from them."""

import math
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

from .errors import ParamOutOfDomain, ZeroAlpha

CONJUGATE_TOL = 1e-12

PARAM_NAMES = ("alpha", "beta", "mu", "lambda_exp", "r", "s", "n", "p", "q")


@dataclass(frozen=True)
class BoundParams:
    """Parameter bundle.  ``None`` means "not supplied"; nothing is defaulted.

    ``lambda_exp`` is the exponent of the power pair ``f(t)=t**lambda_exp``,
    ``g(t)=t**(1-lambda_exp)``.  When only ``p`` is given, ``q`` is its
    conjugate ``p/(p-1)``.
    """

    alpha: Optional[complex] = None
    beta: Optional[float] = None
    mu: Optional[float] = None
    lambda_exp: Optional[float] = None
    r: Optional[float] = None
    s: Optional[float] = None
    n: Optional[int] = None
    p: Optional[float] = None
    q: Optional[float] = None

    def __post_init__(self):
        if self.p is not None and self.q is None and self.p > 1:
            object.__setattr__(self, "q", self.p / (self.p - 1.0))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", complex(self.alpha))

    def with_(self, **kw) -> "BoundParams":
        return replace(self, **kw)

    def supplied(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            if f.name == "alpha":
                out[f.name] = [v.real, v.imag]
            else:
                out[f.name] = v
        return out

    @classmethod
    def from_json(cls, d: dict) -> "BoundParams":
        kw = dict(d)
        if "alpha" in kw and isinstance(kw["alpha"], (list, tuple)):
            kw["alpha"] = complex(kw["alpha"][0], kw["alpha"][1])
        return cls(**kw)


def require(params: BoundParams, names) -> None:
    """Check that every parameter in ``names`` is supplied and in its base domain."""
    for name in names:
        v = getattr(params, name)
        if v is None:
            raise ParamOutOfDomain(f"parameter {name!r} is required")
        if name == "alpha":
            if v == 0:
                raise ZeroAlpha("alpha must be nonzero")
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ParamOutOfDomain("alpha must be finite")
            continue
        if isinstance(v, complex) or not math.isfinite(v):
            raise ParamOutOfDomain(f"{name} must be a finite real number")
        if name == "beta" and v < 0:
            raise ParamOutOfDomain("beta must be >= 0")
        if name in ("mu", "lambda_exp") and not 0 <= v <= 1:
            raise ParamOutOfDomain(f"{name} must lie in [0, 1]")
        if name in ("r", "s") and v < 1:
            raise ParamOutOfDomain(f"{name} must be >= 1")
        if name == "n" and (int(v) != v or v < 1):
            raise ParamOutOfDomain("n must be a positive integer")
        if name in ("p", "q"):
            if v <= 1:
                raise ParamOutOfDomain(f"{name} must be > 1")
    if "p" in names or "q" in names:
        p, q = params.p, params.q
        if p is None or q is None:
            raise ParamOutOfDomain("both p and q are required")
        if abs(1 / p + 1 / q - 1) > CONJUGATE_TOL:
            raise ParamOutOfDomain(f"1/p + 1/q must equal 1, got {1 / p + 1 / q!r}")


@dataclass(frozen=True)
class DerivedConstants:
    delta1: float
    delta2: float
    gamma1: float
    gamma2: float
    chi1: float
    chi2: float
    chi3: float
    chi4: float
    lambda1: float
    lambda2: float


def derived_constants(params: BoundParams) -> DerivedConstants:
    """Constants built from ``alpha`` and ``beta``.

    With ``m = max(1, |alpha - 1|)`` and ``d = |alpha|**2 (beta + 1)``::

        chi1 = lambda1 = (beta + (beta+1) m**2) / d
        chi2 = lambda2 = (1 + 2 (beta+1) m) / d
        chi3 = 2 chi1,  chi4 = delta2 = 2 / d
        delta1 = (2 (beta+1) m**2 + 2 beta) / d
        gamma1 = (2 beta + 1)/(beta + 1),  gamma2 = (2 beta + 3)/(beta + 1)
    """
    require(params, ("alpha", "beta"))
    a, b = params.alpha, params.beta
    m = max(1.0, abs(a - 1))
    d = abs(a) ** 2 * (b + 1)
    chi1 = (b + (b + 1) * m**2) / d
    chi2 = (1 + 2 * (b + 1) * m) / d
    return DerivedConstants(
        delta1=(2 * (b + 1) * m**2 + 2 * b) / d,
        delta2=2 / d,
        gamma1=(2 * b + 1) / (b + 1),
        gamma2=(2 * b + 3) / (b + 1),
        chi1=chi1,
        chi2=chi2,
        chi3=(2 * b + 2 * (b + 1) * m**2) / d,
        chi4=2 / d,
        lambda1=chi1,
        lambda2=chi2,
    )
