"""Command-line front end.

Exit codes: 0 success, 1 check failure or violation, 2 usage error,
3 data error (unreadable or malformed input, evaluation failure).
"""

import argparse
import sys

import numpy as np

from . import apps, catalog, lemmas, verify
from . import matfun as mf
from .errors import NumRadError, UnknownBound, UnknownLemma
from .matio import FORMATS, read_matrix
from .numrad import numerical_radius
from .params import BoundParams

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

GRID_PRESETS = ("default", "minimal")


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Fixed 12 digits after the point; independent of locale."""
    x = float(x)
    if x != x:
        return "nan"
    if x in (float("inf"), float("-inf")):
        return "inf" if x > 0 else "-inf"
    s = f"{x:.12f}"
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def fmt_complex(z) -> str:
    z = complex(z)
    if z.imag == 0:
        return fmt(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}i"


def _alpha(text):
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError("expected RE or RE,IM")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number in {text!r}") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _parser():
    p = argparse.ArgumentParser(prog="nrbounds", description="Numerical radius bounds toolkit.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compute", help="numerical radius and related quantities of one matrix")
    c.add_argument("--in", dest="inputs", required=True)
    c.add_argument("--what", choices=("omega", "norm", "specrad", "abs"), default="omega")
    c.add_argument("--rtol", type=float, default=1e-10)
    c.add_argument("--format", choices=FORMATS)

    b = sub.add_parser("bound", help="evaluate one catalog bound")
    b.add_argument("--id", required=True)
    b.add_argument("--in", dest="inputs", action="append", required=True,
                   help="repeat; files bind positionally to the bound's input shape")
    b.add_argument("--format", choices=FORMATS)
    b.add_argument("--alpha", type=_alpha)
    b.add_argument("--beta", type=float)
    b.add_argument("--mu", type=float)
    b.add_argument("--lambda", dest="lambda_exp", type=float)
    b.add_argument("--r", type=float)
    b.add_argument("--s", type=float)
    b.add_argument("--n", type=int)
    b.add_argument("--p", type=float)
    b.add_argument("--q", type=float)
    b.add_argument("--check", action="store_true")

    v = sub.add_parser("verify", help="randomized soundness check")
    v.add_argument("--bounds", default="all")
    v.add_argument("--ensemble", required=True)
    v.add_argument("--dim", type=int, required=True)
    v.add_argument("--count", type=int, required=True)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--grid", choices=GRID_PRESETS, default="default")
    v.add_argument("--out", required=True)
    v.add_argument("--format", choices=("json", "csv"), default="json")

    lm = sub.add_parser("lemmas", help="fuzz the vector lemmas")
    lm.add_argument("--id", default="all")
    lm.add_argument("--trials", type=int, required=True)
    lm.add_argument("--seed", type=int, required=True)

    r = sub.add_parser("repro", help="reproduce the application scenarios")
    r.add_argument("--scenario", choices=apps.SCENARIOS + ("all",), default="all")

    sub.add_parser("list-bounds", help="catalog of bounds")
    sub.add_parser("list-lemmas", help="catalog of vector lemmas")
    return p


def _minimal_grid(bound_id):
    axes = {k: v[:1] for k, v in verify.GRID_AXES.items()}
    return verify.bound_grid(bound_id, axes)


def cmd_compute(a, out):
    m = read_matrix(a.inputs, a.format)
    if a.what == "omega":
        out.write(fmt(numerical_radius(m, rtol=a.rtol).value) + "\n")
    elif a.what == "norm":
        out.write(fmt(mf.op_norm(m)) + "\n")
    elif a.what == "specrad":
        out.write(fmt(mf.spectral_radius(m)) + "\n")
    else:
        for row in mf.matrix_abs(m):
            out.write(" ".join(fmt_complex(z) for z in row) + "\n")
    return EXIT_OK


def cmd_bound(a, out):
    try:
        catalog.get_descriptor(a.id)
    except (UnknownBound, KeyError):
        raise UsageError(f"unknown bound id {a.id!r}") from None
    mats = [read_matrix(path, a.format) for path in a.inputs]
    params = BoundParams(alpha=a.alpha, beta=a.beta, mu=a.mu, lambda_exp=a.lambda_exp,
                         r=a.r, s=a.s, n=a.n, p=a.p, q=a.q)
    if not a.check:
        out.write(f"bound {fmt(catalog.evaluate_bound(a.id, mats, params))}\n")
        return EXIT_OK
    rec = catalog.check_bound(a.id, mats, params)
    out.write(f"bound {fmt(rec.bound)}\n")
    out.write(f"omega_power {fmt(rec.omega_power)}\n")
    out.write(f"slack {fmt(rec.slack)}\n")
    out.write(f"holds {'true' if rec.holds else 'false'}\n")
    return EXIT_OK if rec.holds else EXIT_FAIL


def cmd_verify(a, out):
    if a.bounds == "all":
        ids = [d.id for d in catalog.list_bounds()]
    else:
        ids = [s for s in a.bounds.split(",") if s]
        for b in ids:
            try:
                catalog.get_descriptor(b)
            except (UnknownBound, KeyError):
                raise UsageError(f"unknown bound id {b!r}") from None
    try:
        spec = verify.EnsembleSpec(a.ensemble, a.dim, a.count, a.seed)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if a.grid == "default":
        report = verify.run_trials(ids, spec)
    else:
        report = verify.merge_reports(verify.run_trials([b], spec, _minimal_grid(b)) for b in ids)
        report.spec = spec.to_json()
    verify.emit_report(report, a.format, a.out)
    s = report.summary()
    out.write(f"records {s['records']}\nviolations {s['violations']}\nerrors {s['errors']}\n")
    for rec in report.violations:
        out.write("violation " + report.recipe(rec) + "\n")
    return EXIT_OK if not report.violations and not report.errors else EXIT_FAIL


def cmd_lemmas(a, out):
    ids = [d.id for d in lemmas.list_lemmas()] if a.id == "all" else [a.id]
    for lid in ids:
        try:
            lemmas.get_lemma(lid)
        except (UnknownLemma, KeyError):
            raise UsageError(f"unknown lemma id {lid!r}") from None
    total = 0
    for lid in ids:
        res = lemmas.fuzz_lemma(lid, trials=a.trials, seed=a.seed)
        v = sum(r.violations for r in res)
        total += v
        worst = min(r.worst_margin for r in res) if res else float("nan")
        out.write(f"{lid} grid {len(res)} trials {a.trials} violations {v} worst_margin {fmt(worst)}\n")
    return EXIT_OK if total == 0 else EXIT_FAIL


def _fmt_expected(x):
    return f"{float(x):.12g}"


def cmd_repro(a, out):
    rows = apps.repro(a.scenario)
    for r in rows:
        line = f"{r.name} {fmt(r.measured)} expected {_fmt_expected(r.expected)}"
        if r.target != r.expected:
            line += f" oracle {_fmt_expected(r.target)}"
        line += " PASS" if r.passed else " FAIL"
        out.write(line + "\n")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def cmd_list_bounds(a, out):
    for d in catalog.list_bounds():
        k = d.omega_exponent
        out.write(f"{d.id}\tshape={d.input_shape}\tinputs={d.inputs}\tparams={','.join(d.params) or '-'}\t"
                  f"side={'upper' if d.side == catalog.UPPER else 'lower'}\tpower={k}\t{d.citation}\n")
    return EXIT_OK


def cmd_list_lemmas(a, out):
    for d in lemmas.list_lemmas():
        out.write(f"{d.id}\tarity={d.arity}\tparams={','.join(d.params) or '-'}\t{d.citation}\n")
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "bound": cmd_bound,
    "verify": cmd_verify,
    "lemmas": cmd_lemmas,
    "repro": cmd_repro,
    "list-bounds": cmd_list_bounds,
    "list-lemmas": cmd_list_lemmas,
}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.cmd](args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (NumRadError, OSError, ValueError, np.linalg.LinAlgError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
