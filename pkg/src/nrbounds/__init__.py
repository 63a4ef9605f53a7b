"""Numerical radius of complex matrices and a verified catalog of bounds on it."""

from .apps import repro, repro_all
from .catalog import (
    BoundInput,
    FunctionPair,
    PowerPair,
    check_bound,
    evaluate_bound,
    get_descriptor,
    list_bounds,
    refinement_chains,
)
from .errors import NumRadError
from .lemmas import evaluate_lemma, fuzz_lemma, get_lemma, list_lemmas
from .matfun import abs_adj_power, abs_power, matrix_abs, matrix_power_psd, op_norm, spectral_radius
from .matio import read_matrix, write_matrix
from .numrad import block_compose, numerical_radius, numerical_radius_oracle, omega
from .params import BoundParams, derived_constants
from .verify import EnsembleSpec, run_sweep, run_trials

__version__ = "0.1.0"
