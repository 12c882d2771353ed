"""Permutation black-peg Mastermind under locality constraints.

Core vocabulary lives in :mod:`permind.perms`; Cayley-graph routing in
:mod:`permind.cayley`; matching machinery in :mod:`permind.graphs`;
strategies and simulators in :mod:`permind.strategies`; hardness reductions
and transcript solvers in :mod:`permind.complexity`; file formats, the CLI
and the game service in :mod:`permind.fileio`, :mod:`permind.cli` and
:mod:`permind.service`.
"""

from .errors import (
    CapacityError,
    LocalityViolation,
    PermindError,
    ProtocolViolation,
    SizeMismatchError,
)
from .perms import (
    LocalityClass,
    Permutation,
    Transcript,
    black_peg_score,
    check_locality,
    compatible_secrets,
    compose,
    diff_set,
    ell,
    invert,
    support,
    window,
)

__all__ = [
    "CapacityError",
    "LocalityViolation",
    "PermindError",
    "ProtocolViolation",
    "SizeMismatchError",
    "LocalityClass",
    "Permutation",
    "Transcript",
    "black_peg_score",
    "check_locality",
    "compatible_secrets",
    "compose",
    "diff_set",
    "ell",
    "invert",
    "support",
    "window",
]

__version__ = "0.1.0"
