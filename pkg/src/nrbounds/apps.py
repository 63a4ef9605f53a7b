"""Reproduction targets for the application scenarios and the worked example.

Each builder returns a :class:`Scenario` holding the operands, the
published numbers and, where a published number does not survive exact
recomputation, an independently computed oracle value plus a note.  A
check passes when the measured value matches its target: the oracle if
one is recorded, otherwise the published value.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import catalog
from . import matfun as mf
from .numrad import block_compose, horn_bound, nr_2x2_nonneg, numerical_radius, numerical_radius_oracle, omega
from .params import BoundParams

SCENARIOS = ("quantum", "volterra", "fractional", "fpde", "example")


@dataclass(frozen=True)
class Expected:
    value: float
    tol: float
    source: str
    oracle: Optional[float] = None
    note: Optional[str] = None

    @property
    def target(self):
        return self.value if self.oracle is None else self.oracle


@dataclass
class Scenario:
    id: str
    operands: dict
    expected: dict
    measure: dict
    notes: list = field(default_factory=list)


@dataclass(frozen=True)
class CheckResult:
    scenario: str
    name: str
    measured: float
    expected: float
    target: float
    tol: float
    passed: bool
    note: Optional[str] = None


def build_quantum() -> Scenario:
    h11 = np.diag([3.0, 1.0]).astype(complex)
    h22 = np.array([[2, -1], [-1, 2]], dtype=complex)
    h12 = np.array([[0, 1], [0, 0]], dtype=complex)
    h21 = h12.conj().T
    blocks = [h11, h12, h21, h22]

    def hmat():
        return np.array([[omega(h11), mf.op_norm(h12)], [mf.op_norm(h21), omega(h22)]])

    measure = {
        "omega_H11": lambda: omega(h11),
        "omega_H22": lambda: omega(h22),
        "norm_H12": lambda: mf.op_norm(h12),
        "norm_H21": lambda: mf.op_norm(h21),
        "omega_comparison": lambda: omega(hmat()),
        "comparison_fg_bound": lambda: catalog.evaluate_bound("comparison-fg", blocks, BoundParams(s=1, lambda_exp=0.5)),
    }
    expected = {
        "omega_H11": Expected(3, 1e-9, "quantum example, eigenvalues 3 and 1"),
        "omega_H22": Expected(3, 1e-9, "quantum example, eigenvalues 1 and 3"),
        "norm_H12": Expected(1, 1e-9, "quantum example, interaction norms"),
        "norm_H21": Expected(1, 1e-9, "quantum example, interaction norms"),
        "omega_comparison": Expected(4, 1e-9, "quantum example, comparison matrix eigenvalues 2 and 4"),
        "comparison_fg_bound": Expected(4, 1e-9, "quantum example, final bound"),
    }
    ops = {"H11": h11, "H12": h12, "H21": h21, "H22": h22, "H": block_compose("full-2x2", blocks)}
    return Scenario("quantum", ops, expected, measure)


def build_volterra() -> Scenario:
    k_norm = 1 - math.exp(-1)
    m = np.array([[2.0, k_norm], [1.0, 0.5]])
    a1 = np.array([[-1.0, 1.0], [0.0, -2.0]])
    recomputed = 0.5 * (2.5 + math.sqrt(2.25 + (2 - math.exp(-1)) ** 2))
    measure = {
        "norm_K": lambda: k_norm,
        "omega_A_at_t0": lambda: omega(np.array([[-1.0, 0.0], [0.0, -2.0]])),
        "omega_A_at_t1": lambda: omega(a1),
        "omega_comparison": lambda: nr_2x2_nonneg(2.0, 0.5, k_norm, 1.0),
        "horn_comparison": lambda: horn_bound(m),
    }
    expected = {
        "norm_K": Expected(k_norm, 1e-12, "Volterra example, kernel norm 1 - 1/e"),
        "omega_A_at_t0": Expected(2, 1e-9, "Volterra example, max{1, 2} = 2"),
        "omega_A_at_t1": Expected(
            2, 1e-9, "Volterra example, max{1, 2} = 2",
            oracle=1.5 + math.sqrt(0.5),
            note="A(t) is triangular but not normal for t > 0; omega(A(1)) = 3/2 + sqrt(1/2), not 2",
        ),
        "omega_comparison": Expected(
            2.3, 0.1, "Volterra example, final bound '~ 2.3'",
            oracle=recomputed,
            note="the quoted closed form evaluates to 2.3584, the published figure is rounded too coarsely",
        ),
        "horn_comparison": Expected(recomputed, 1e-9, "closed form for non-negative 2 x 2 matrices"),
    }
    notes = [expected[k].note for k in ("omega_A_at_t1", "omega_comparison")]
    return Scenario("volterra", {"M": m, "A1": a1}, expected, measure, notes)


def build_fractional(beta: float = 1.0) -> Scenario:
    a = np.diag([-1.0, -2.0]).astype(complex)
    t_end, order = 1.0, 0.5
    k_norm = t_end**order / order
    c4 = (3 * beta + 2) / (16 * (beta + 1))
    c2 = (2 * beta + 3) / (16 * (beta + 1))
    # component values as stated: ||(|A|^4 + |K*|^4)|| -> 16 + 4, ||(|A|^2 + |K*|^2)|| -> 4 + 2
    stated4, stated2 = 16 + 4, 4 + 2
    measure = {
        "norm_A": lambda: mf.op_norm(a),
        "norm_K": lambda: k_norm,
        "coef_x4": lambda: c4 * stated4,
        "coef_y2": lambda: c2 * stated2,
        "coef_w2": lambda: 1 / 8,
        "norm_A4_plus_K4": lambda: mf.op_norm(mf.abs_power(a, 4) + k_norm**4 * np.eye(2)),
    }
    expected = {
        "norm_A": Expected(2, 1e-12, "fractional example, ||A|| = 2"),
        "norm_K": Expected(2, 1e-12, "fractional example, ||K|| = T^a / a with T = 1, a = 1/2"),
        "coef_x4": Expected(3.125, 1e-12, "fractional example, 5/32 (16 + 4)"),
        "coef_y2": Expected(0.9375, 1e-12, "fractional example, 5/32 (4 + 2)"),
        "coef_w2": Expected(0.125, 1e-12, "fractional example, 1/8"),
        "norm_A4_plus_K4": Expected(
            20, 1e-9, "fractional example, component '16 + 4'",
            oracle=32.0,
            note="with ||A|| = ||K|| = 2 both fourth powers are 16; '16 + 4' does not follow from the stated norms",
        ),
    }
    notes = [expected["norm_A4_plus_K4"].note]
    return Scenario("fractional", {"A": a}, expected, measure, notes)


def build_fpde() -> Scenario:
    h = 0.25
    k = (1 / h) * np.array([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], dtype=float)
    m = np.array([[8.0, 1.0], [1.0, 0.0]])
    measure = {
        "omega_comparison": lambda: numerical_radius(m, method="sweep").value,
        "closed_form": lambda: nr_2x2_nonneg(8, 0, 1, 1),
        "closed_form_vs_sweep": lambda: abs(nr_2x2_nonneg(8, 0, 1, 1) - numerical_radius(m, method="sweep").value),
        "norm_K": lambda: mf.op_norm(k),
    }
    expected = {
        "omega_comparison": Expected(4 + math.sqrt(17), 1e-9, "FPDE example, 4 + sqrt(17)"),
        "closed_form": Expected(4 + math.sqrt(17), 1e-9, "FPDE example, (8 + sqrt(68)) / 2"),
        "closed_form_vs_sweep": Expected(0.0, 1e-9, "closed form and sweep agree"),
        "norm_K": Expected(
            16, 0.5, "FPDE example, ||K|| ~ 16 for small h",
            oracle=4 * (2 + math.sqrt(2)),
            note="the assembled N = 3 stiffness matrix has ||K|| = 4 (2 + sqrt 2) = 13.657; the comparison "
                 "entry 8 is taken as published and is not derived from it",
        ),
    }
    return Scenario("fpde", {"K": k, "M": m}, expected, measure, [expected["norm_K"].note])


def example_blocks():
    t = np.array([[1, -1], [0, 1]], dtype=complex)
    x = np.array([[2, 1], [-1, 1]], dtype=complex)
    y = np.array([[1, -1], [1, 1]], dtype=complex)
    s = np.array([[1, 1], [2, 1]], dtype=complex)
    return t, x, y, s


EXAMPLE_PARAMS = BoundParams(alpha=2, beta=0.0, mu=0.5)


def build_example() -> Scenario:
    t, x, y, s = example_blocks()
    e = block_compose("offdiag", [x @ s, y @ t])
    full = block_compose("full-2x2", [t, x, y, s])

    def nsum(p, q, e_):
        return mf.op_norm(mf.abs_power(p, e_) + mf.abs_adj_power(q, e_))

    # hand-derived closed forms: |T|^4 + |X*|^4 = [[28,-10],[-10,10]], |T|^2 + |X*|^2 = [[6,-2],[-2,4]]
    n4_true = 19 + math.sqrt(181)
    n2_true = 5 + math.sqrt(5)
    we_oracle = numerical_radius_oracle(e, seed=0)
    n4max = 27.5 + math.sqrt(551.25)
    n2max = max(n2_true, 5.5 + math.sqrt(11.25))
    bound_oracle = 3.5 * n4max + 2 * n2max * we_oracle + 5 * we_oracle**2

    measure = {
        "norm_T4_X4": lambda: nsum(t, x, 4),
        "norm_S4_Y4": lambda: nsum(s, y, 4),
        "norm_T2_X2": lambda: nsum(t, x, 2),
        "norm_S2_Y2": lambda: nsum(s, y, 2),
        "omega_E": lambda: omega(e),
        "bound": lambda: catalog.evaluate_bound("modified-kz", [t, x, y, s], EXAMPLE_PARAMS),
        "omega4_A": lambda: omega(full) ** 4,
        "holds": lambda: float(catalog.check_bound("modified-kz", [t, x, y, s], EXAMPLE_PARAMS).holds),
    }
    expected = {
        "norm_T4_X4": Expected(28.8489, 1e-3, "example step 1, ||[[28,4],[4,10]]||", oracle=n4_true,
                               note="|T|^4 + |X*|^4 = [[28,-10],[-10,10]], norm 19 + sqrt(181) = 32.4536"),
        "norm_S4_Y4": Expected(50.978, 1e-3, "example step 1, ||[[38,21],[21,17]]||"),
        "norm_T2_X2": Expected(6, 1e-9, "example step 1, ||[[6,0],[0,4]]||", oracle=n2_true,
                               note="|T|^2 + |X*|^2 = [[6,-2],[-2,4]], norm 5 + sqrt(5) = 7.2361"),
        "norm_S2_Y2": Expected(8.854, 1e-3, "example step 1, ||[[7,3],[3,4]]||"),
        "omega_E": Expected(1.6884, 1e-3, "example step 2", oracle=we_oracle,
                            note="omega(E) = 3.2255 by sweep and by the sampling oracle"),
        "bound": Expected(222.577, 0.05, "example step 3", oracle=bound_oracle,
                          note="with the corrected components the bound is 287.56"),
        "omega4_A": Expected(193.8, 0.5, "example step 4, (3.732)^4"),
        "holds": Expected(1.0, 0.0, "example step 4, inequality holds"),
    }
    notes = [v.note for v in expected.values() if v.note]
    return Scenario("example", {"T": t, "X": x, "Y": y, "S": s, "E": e, "A": full}, expected, measure, notes)


BUILDERS = {
    "quantum": build_quantum,
    "volterra": build_volterra,
    "fractional": build_fractional,
    "fpde": build_fpde,
    "example": build_example,
}


def run_scenario(sc: Scenario) -> list:
    out = []
    for name, fn in sc.measure.items():
        exp = sc.expected[name]
        val = float(fn())
        passed = abs(val - exp.target) <= exp.tol
        out.append(CheckResult(sc.id, name, val, float(exp.value), float(exp.target), exp.tol, passed, exp.note))
    return out


def repro(scenario: str = "all") -> list:
    """Checks for one scenario id or ``"all"``; failures are reported, not raised."""
    ids = SCENARIOS if scenario == "all" else (scenario,)
    out = []
    for sid in ids:
        if sid not in BUILDERS:
            raise KeyError(f"unknown scenario {sid!r}")
        out.extend(run_scenario(BUILDERS[sid]()))
    return out


def repro_all() -> list:
    return repro("all")
