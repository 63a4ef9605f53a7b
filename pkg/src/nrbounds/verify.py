"""Seeded random ensembles and the bound verification sweep.

Randomness comes from numpy's ``PCG64`` generator.  Trial ``t`` of a spec
with seed ``s`` draws from ``default_rng([s, t])``, so any record can be
reproduced from ``(seed, trial)`` alone, independently of the others.
Complex Gaussian entries have unit variance in each component.
"""

import csv
import io
import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import catalog
from .errors import BadDim, EmptyReport, NumRadError, ParamOutOfDomain
from .params import BoundParams

KINDS = ("ginibre-complex", "hermitian", "psd", "normal", "nilpotent-sq-zero", "nonneg-entrywise", "unitary")
ALIASES = {"ginibre": "ginibre-complex", "nilpotent": "nilpotent-sq-zero", "nonneg": "nonneg-entrywise"}
SWEEP_KINDS = ("ginibre-complex", "hermitian", "nilpotent-sq-zero", "normal")
SWEEP_DIMS = (2, 3, 4, 5, 6)

CSV_HEADER = ("bound_id", "trial", "dim", "omega_power", "bound", "slack", "holds")

GRID_AXES = {
    "alpha": (2, 3, 1 + 1j, 0.5),
    "beta": (0.0, 0.5, 1.0, 5.0),
    "mu": (0.0, 0.25, 0.5, 1.0),
    "lambda_exp": (0.0, 0.25, 0.5, 1.0),
    "r": (1.0, 1.5, 2.0),
    "s": (1.0, 1.5, 2.0),
    "n": (2, 3),
}
PQ_AXIS = ((2.0, 2.0), (3.0, 1.5))


@dataclass(frozen=True)
class EnsembleSpec:
    kind: str
    dim: int
    count: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))
        if not 1 <= int(self.dim) <= 16:
            raise BadDim(f"dim must lie in 1..16, got {self.dim}")
        if self.count < 0:
            raise BadDim("count must be >= 0")

    def to_json(self):
        return {"kind": self.kind, "dim": self.dim, "count": self.count, "seed": self.seed}


def canonical_kind(kind: str) -> str:
    kind = ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise BadDim(f"unknown ensemble kind {kind!r}")
    return kind


def _cgauss(rng, d):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def _haar_unitary(rng, d):
    q, r = np.linalg.qr(_cgauss(rng, d))
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * ph


def draw(kind: str, d: int, rng: np.random.Generator) -> np.ndarray:
    """One ``d x d`` matrix of the given ensemble."""
    kind = canonical_kind(kind)
    if kind == "ginibre-complex":
        return _cgauss(rng, d)
    if kind == "hermitian":
        g = _cgauss(rng, d)
        h = (g + g.conj().T) / 2
        return (h + h.conj().T) / 2
    if kind == "psd":
        g = _cgauss(rng, d)
        return g @ g.conj().T / d
    if kind == "normal":
        u = _haar_unitary(rng, d)
        lam = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        return (u * lam) @ u.conj().T
    if kind == "nilpotent-sq-zero":
        # [[0, G], [0, 0]] in a random orthonormal basis
        k = d // 2
        core = np.zeros((d, d), dtype=complex)
        if k:
            core[:k, d - k:] = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        u = _haar_unitary(rng, d)
        return u @ core @ u.conj().T
    if kind == "nonneg-entrywise":
        return np.abs(rng.standard_normal((d, d))) + 0j
    return _haar_unitary(rng, d)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial)])


def generate(spec: EnsembleSpec) -> list:
    """``spec.count`` matrices; matrix ``t`` is the first draw of trial ``t``."""
    return [draw(spec.kind, spec.dim, trial_rng(spec.seed, t)) for t in range(spec.count)]


# inputs for block-shaped bounds -----------------------------------------

_PSD_OPERANDS = {"half-power-chain", "half-power-chain-2", "half-power-chain-3"}


def _layout(desc, trial):
    """(tag, number of blocks) for a bound at a given trial."""
    shape = desc.input_shape
    if shape == "single":
        return shape, 1
    if shape == "pair":
        return shape, 2
    if shape == "blocks2x2":
        return shape, 4
    if shape == "blocksNxN":
        k = 2 if desc.id == "comparison-2x2" else 2 + trial % 2
        return shape, k * k
    if shape == "single_row":
        return shape, 2 + trial % 3
    if shape == "triple_AXB":
        return ("triple_AXB_psd" if desc.id in _PSD_OPERANDS else shape), 6
    return shape, 3 * (1 + trial % 3)


def _build(tag, nblocks, kind, d, seed, trial):
    rng = trial_rng(seed, trial)
    if tag == "triple_AXB_psd":
        mats = [draw(kind, d, rng) for _ in range(nblocks)]
        psd = [draw("psd", d, rng) for _ in range(4)]
        # A1, A2, B1, B2 PSD; X1, X2 from the ensemble
        return [psd[0], psd[1], mats[2], mats[3], psd[2], psd[3]]
    return [draw(kind, d, rng) for _ in range(nblocks)]


def bound_grid(bound_id: str, axes: Optional[dict] = None) -> list:
    """Cross product of the default axes restricted to the bound's parameters and domain."""
    axes = GRID_AXES if axes is None else axes
    desc = catalog.get_descriptor(bound_id)
    grid = [BoundParams()]
    names = [n for n in desc.params if n not in ("p", "q")]
    for name in names:
        grid = [g.with_(**{name: v}) for g in grid for v in axes[name]]
    if "p" in desc.params:
        grid = [g.with_(p=p, q=q) for g in grid for p, q in PQ_AXIS]
    return [g for g in grid if catalog.in_domain(bound_id, g)]


# report ----------------------------------------------------------------

@dataclass
class TrialRecord:
    bound_id: str
    trial: int
    dim: int
    params: dict
    omega_power: float
    bound: float
    slack: float
    holds: bool
    error: Optional[str] = None

    def to_json(self):
        return {
            "bound_id": self.bound_id, "trial": self.trial, "dim": self.dim, "params": self.params,
            "omega_power": self.omega_power, "bound": self.bound, "slack": self.slack, "holds": self.holds,
            "error": self.error,
        }


@dataclass
class VerificationReport:
    spec: dict
    grid: dict
    records: list = field(default_factory=list)

    @property
    def violations(self):
        return [r for r in self.records if r.error is None and not r.holds]

    @property
    def errors(self):
        return [r for r in self.records if r.error is not None]

    def summary(self) -> dict:
        ok = [r for r in self.records if r.error is None]
        out = {"records": len(self.records), "violations": len(self.violations), "errors": len(self.errors)}
        if ok:
            slacks = [r.slack for r in ok]
            out["min_slack"] = min(slacks)
            out["mean_slack"] = float(np.mean(slacks))
        if self.records:
            out["per_bound"] = tightness_stats(self)
        return out

    def recipe(self, rec: TrialRecord) -> str:
        return (
            f"bound={rec.bound_id} kind={self.spec.get('kind')} dim={rec.dim} seed={self.spec.get('seed')} "
            f"trial={rec.trial} params={json.dumps(rec.params, sort_keys=True)} "
            f"omega_power={rec.omega_power!r} bound={rec.bound!r}"
        )


class ViolationError(AssertionError):
    pass


def run_trials(bounds, ensemble: EnsembleSpec, param_grid=None, on_violation: str = "record") -> VerificationReport:
    """Check every bound on ``ensemble.count`` seeded trials.

    ``param_grid`` is either a list of :class:`BoundParams` applied to
    every bound (points outside a bound's domain are skipped) or ``None``
    for the default per-bound grid.  Evaluation errors are recorded per
    trial.  With ``on_violation="raise"`` the first violation raises
    :class:`ViolationError` carrying the reproduction recipe.
    """
    if bounds == "all" or bounds is None:
        bounds = [d.id for d in catalog.list_bounds()]
    bounds = list(bounds)
    descs = [catalog.get_descriptor(b) for b in bounds]
    grids = {}
    for b in bounds:
        grids[b] = bound_grid(b) if param_grid is None else [p for p in param_grid if catalog.in_domain(b, p)]
    report = VerificationReport(
        spec=ensemble.to_json(),
        grid={"preset": "default" if param_grid is None else "custom",
              "points": {b: [p.to_json() for p in grids[b]] for b in bounds} if param_grid is not None else None},
    )
    d = ensemble.dim
    for t in range(ensemble.count):
        contexts = {}
        for desc in descs:
            key = _layout(desc, t)
            if key not in contexts:
                mats = _build(key[0], key[1], ensemble.kind, d, ensemble.seed, t)
                contexts[key] = catalog.EvalContext(catalog.BoundInput.of(desc.input_shape, mats))
            ctx = contexts[key]
            for params in grids[desc.id]:
                try:
                    rec = catalog.check_bound(desc.id, params=params, ctx=ctx)
                    tr = TrialRecord(desc.id, t, d, params.to_json(), rec.omega_power, rec.bound, rec.slack, rec.holds)
                except (NumRadError, np.linalg.LinAlgError, FloatingPointError) as exc:
                    tr = TrialRecord(desc.id, t, d, params.to_json(), math.nan, math.nan, math.nan, False,
                                     f"{type(exc).__name__}: {exc}")
                report.records.append(tr)
                if on_violation == "raise" and tr.error is None and not tr.holds:
                    raise ViolationError("bound violated: " + report.recipe(tr))
    return report


def merge_reports(reports) -> VerificationReport:
    reports = list(reports)
    out = VerificationReport(spec={"parts": [r.spec for r in reports]}, grid=reports[0].grid if reports else {})
    for r in reports:
        out.records.extend(r.records)
    return out


def run_sweep(bounds="all", kinds=SWEEP_KINDS, dims=SWEEP_DIMS, trials: int = 200, seed: int = 0) -> list:
    """Default soundness sweep: ``trials`` per bound per kind, split evenly over ``dims``."""
    reports = []
    dims = list(dims)
    for kind in kinds:
        for i, d in enumerate(dims):
            count = trials // len(dims) + (i < trials % len(dims))
            reports.append(run_trials(bounds, EnsembleSpec(kind, d, count, seed)))
    return reports


def _ratio(rec, side):
    wp, b = rec.omega_power, rec.bound
    num, den = (wp, b) if side == catalog.UPPER else (b, wp)
    if den == 0:
        return 1.0 if num == 0 else math.inf
    return num / den


def tightness_stats(report: VerificationReport) -> dict:
    """Per bound: count, violations and quantiles of the tightness ratio.

    The ratio is ``omega**k / bound`` for upper bounds and
    ``bound / omega**k`` for lower bounds; 1 means attained.  Bounds are
    ranked by median tightness, tightest first.
    """
    ok = [r for r in report.records if r.error is None]
    if not ok:
        raise EmptyReport("report has no successful records")
    by = {}
    for r in ok:
        by.setdefault(r.bound_id, []).append(r)
    stats = {}
    for bid, recs in by.items():
        side = catalog.get_descriptor(bid).side
        ratios = np.array([_ratio(r, side) for r in recs])
        finite = ratios[np.isfinite(ratios)]
        q = np.quantile(finite, [0.0, 0.25, 0.5, 0.75, 1.0]) if finite.size else [math.nan] * 5
        stats[bid] = {
            "count": len(recs),
            "violations": sum(not r.holds for r in recs),
            "min_slack": min(r.slack for r in recs),
            "tightness": dict(zip(("min", "q25", "median", "q75", "max"), (float(x) for x in q))),
        }
    order = sorted(stats, key=lambda b: -stats[b]["tightness"]["median"] if not math.isnan(stats[b]["tightness"]["median"]) else math.inf)
    for rank, bid in enumerate(order, 1):
        stats[bid]["rank"] = rank
    return stats


# serialization ---------------------------------------------------------

def _dump(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "NaN"
        if math.isinf(x):
            return "Infinity" if x > 0 else "-Infinity"
        return format(x, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_to_json(report: VerificationReport) -> str:
    doc = {
        "spec": report.spec,
        "grid": report.grid,
        "records": [r.to_json() for r in report.records],
        "summary": report.summary(),
    }
    return _dump(doc) + "\n"


def report_from_json(text: str) -> VerificationReport:
    doc = json.loads(text)
    recs = [TrialRecord(**r) for r in doc["records"]]
    return VerificationReport(spec=doc["spec"], grid=doc["grid"], records=recs)


def report_to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in report.records:
        w.writerow([r.bound_id, r.trial, r.dim, format(r.omega_power, ".17g"), format(r.bound, ".17g"),
                    format(r.slack, ".17g"), "true" if r.holds else "false"])
    return buf.getvalue()


def emit_report(report: VerificationReport, fmt: str, path) -> None:
    """Write ``report`` as ``json`` or ``csv``.  I/O failures surface as ``OSError``."""
    if fmt == "json":
        text = report_to_json(report)
    elif fmt == "csv":
        text = report_to_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# chains and structural checks --------------------------------------------

def check_chains(trials: int = 200, seed: int = 0, kinds=("ginibre-complex",), dims=SWEEP_DIMS) -> list:
    """Evaluate every refinement chain on shared random inputs.

    Returns one dict per (chain, kind, trial, params) with the step values
    and whether they are nondecreasing.
    """
    out = []
    dims = list(dims)
    for chain in catalog.refinement_chains():
        desc0 = catalog.get_descriptor(chain.steps[0].split("^")[0])
        axes = {k: GRID_AXES[k] for k in chain.params}
        if chain.input_shape == "triple_AXB":
            axes["r"] = (2.0, 3.0)
        grid = [BoundParams()]
        for name, vals in axes.items():
            grid = [g.with_(**{name: v}) for g in grid for v in vals]
        for kind in kinds:
            for t in range(trials):
                d = dims[t % len(dims)]
                tag, nb = _layout(desc0, t)
                mats = _build(tag, nb, kind, d, seed, t)
                for params in grid:
                    vals = chain.evaluate(mats, params)
                    out.append({"chain": chain.name, "kind": kind, "trial": t, "dim": d,
                                "params": params.with_(**chain.fixed).to_json(), "values": vals,
                                "ordered": catalog.is_nondecreasing(vals)})
    return out
