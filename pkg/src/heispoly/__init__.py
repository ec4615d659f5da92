"""Polynomial extensions of the Heisenberg group.

Exact group law and cocycle over rationals, vacuum characteristic functions
and moments, a truncated Fock-space oracle, and the step-function current
algebra.
"""

from __future__ import annotations

from .current import CurrentElement, StepFunction, current_compose, galilei_compose_closed
from .errors import ConvergenceError, ValidationError
from .group import GroupElement, compose, identity, inverse, sigma, sigma_closed
from .operators import TriMatrix, s_matrix, t_inverse, t_matrix, t_power_closed
from .poly import Poly, Rat, to_rat
from .vacuum import charfn_general, charfn_heis2, moments_heis2, overlap_heis2

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "CurrentElement",
    "GroupElement",
    "Poly",
    "Rat",
    "StepFunction",
    "TriMatrix",
    "ValidationError",
    "charfn_general",
    "charfn_heis2",
    "compose",
    "current_compose",
    "galilei_compose_closed",
    "identity",
    "inverse",
    "moments_heis2",
    "overlap_heis2",
    "s_matrix",
    "sigma",
    "sigma_closed",
    "t_inverse",
    "t_matrix",
    "t_power_closed",
    "to_rat",
]
