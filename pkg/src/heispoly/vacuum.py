"""Vacuum characteristic functions and moments.

Conventions.  Under the Fock vacuum ``sqrt2 q`` is standard normal, i.e.
``q ~ N(0, 1/2)``.  The two-mode observables of the Galilei algebra are
written in the scaled variables

    X = A (sqrt2 q)^2 + B (sqrt2 q) + C (sqrt2 p)

while a group element ``(u, P')`` refers to ``u p + P'(q)`` in the unscaled
operators.  ``heis2_to_group`` converts between the two.

Square roots ``(1 - 2 i a t)^(-1/2)`` use the principal branch.  The real part
of ``1 - 2 i a t`` is identically 1, so the argument never meets the branch
cut and the result is continuous in ``t``.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from scipy.special import roots_hermite

from . import fock
from .errors import ConvergenceError, ValidationError
from .group import GroupElement
from .operators import t_apply
from .poly import to_rat

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Hermite node count, doubling tolerance and node cap."""

    nodes: int = 200
    tol: float = 1e-11
    max_nodes: int = 1600

    def __post_init__(self) -> None:
        if self.nodes < 8:
            raise ValidationError("quadrature needs at least 8 nodes")
        if not self.tol > 0:
            raise ValidationError("quadrature tolerance must be positive")

    def cap(self) -> int:
        env = os.environ.get("HEISPOLY_MAX_NODES")
        if env:
            try:
                return min(self.max_nodes, int(env))
            except ValueError as exc:
                raise ValidationError(f"HEISPOLY_MAX_NODES={env!r} is not an integer") from exc
        return self.max_nodes


@lru_cache(maxsize=32)
def _probabilists_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    # physicists' rule for exp(-x^2) rescaled to the N(0, 1) density
    x, w = roots_hermite(n)
    return x * SQRT2, w / math.sqrt(math.pi)


def gauss_expectation(
    coeffs: Sequence[complex], c: complex = 0.0, spec: QuadratureSpec | None = None
) -> complex:
    """``E[exp(i Q(X) + c X)]`` for ``X ~ N(0, 1)``.

    ``coeffs`` are the (possibly complex) coefficients of ``Q`` in increasing
    degree.  The node count doubles until two successive estimates agree
    within ``spec.tol``.
    """
    spec = spec or QuadratureSpec()
    cs = np.asarray(list(coeffs) or [0.0], dtype=complex)
    if len(cs) > 9:
        raise ValidationError("gauss_expectation supports degree <= 8")
    n = spec.nodes
    cap = spec.cap()
    previous = None
    while True:
        x, w = _probabilists_rule(n)
        with np.errstate(over="ignore", invalid="ignore"):
            integrand = np.exp(1j * np.polynomial.polynomial.polyval(x, cs) + c * x)
            value = complex(np.sum(w * integrand))
        if not cmath.isfinite(value):
            raise ConvergenceError(f"non-finite quadrature value with {n} nodes")
        if previous is not None and abs(value - previous) <= spec.tol:
            return value
        if 2 * n > cap:
            delta = float("nan") if previous is None else abs(value - previous)
            raise ConvergenceError(f"quadrature did not settle by {n} nodes (|delta|={delta:.3e})")
        previous = value
        n *= 2


def charfn_quadratic(alpha: float, beta: float, gamma: float) -> complex:
    """``E[exp(i alpha X^2 + i beta X + gamma X)]`` for standard normal ``X``."""
    d = 1 - 2j * alpha
    return (
        1 / cmath.sqrt(d)
        * cmath.exp(gamma**2 / (2 * d))
        * cmath.exp(-(beta**2) / (2 * d))
        * cmath.exp(1j * beta * gamma / d)
    )


def charfn_heis2(a: float, b: float, c: float, t: float) -> complex:
    """Vacuum characteristic function of ``A x^2 + B x + C y`` at ``t``.

    Here ``x = sqrt2 q`` and ``y = sqrt2 p``.
    """
    d = 1 - 2j * a * t
    m2 = b * b + c * c
    num = 4 * c * c * (a * a * t**4 + 2j * a * t**3) - 3 * m2 * t * t
    return cmath.exp(num / (6 * d)) / cmath.sqrt(d)


def overlap_coefficients(
    p1: Sequence[float], p2: Sequence[float]
) -> tuple[complex, complex, complex]:
    """``(L, Z1, Z2)`` of the overlap exponent ``(L t^4 + Z1 t^3 + Z2 t^2) / (6 d)``.

    ``Z2`` carries ``-3 (b2 - b1)^2`` as well as ``-3 (g2 - g1)^2``; dropping
    the first term breaks the ``p1 = 0`` reduction to :func:`charfn_heis2`.
    """
    a1, b1, g1 = p1
    a2, b2, g2 = p2
    da, db, dg = a2 - a1, b2 - b1, g2 - g1
    k = a1 * g2 - a2 * g1
    cross = b1 * g2 - g1 * b2
    big_l = -4 * k * (3 * k + 2 * da * (g1 + g2)) + 4 * dg**2 * da**2
    z1 = 12 * (da * cross - db * k) + 4j * (2 * da * dg**2 + (g1 + g2) * (a2 * g1 - a1 * g2))
    z2 = -3 * (db**2 + dg**2) + 6j * cross
    return big_l, z1, z2


def overlap_heis2(p1: Sequence[float], p2: Sequence[float], t: float) -> complex:
    """``<exp(it H1) Phi, exp(it H2) Phi>`` for ``H_j = a_j x^2 + b_j x + g_j y``."""
    big_l, z1, z2 = overlap_coefficients(p1, p2)
    d = 1 - 2j * (p2[0] - p1[0]) * t
    return cmath.exp((big_l * t**4 + z1 * t**3 + z2 * t**2) / (6 * d)) / cmath.sqrt(d)


def heis2_to_group(a: float, b: float, c: float, t: float) -> tuple[float, list[float]]:
    """``t (A x^2 + B x + C y)`` as ``(u, P')`` with ``u p + P'(q)``."""
    return SQRT2 * c * t, [0.0, SQRT2 * b * t, 2.0 * a * t]


def charfn_general(
    g: GroupElement | tuple[float, Sequence[float]], spec: QuadratureSpec | None = None
) -> complex:
    """``<Phi, exp(i(u p + P'(q))) Phi>`` by the q-projection reduction.

    ``exp(i(u p + P'(q))) = exp(i (T_u P')(q)) exp(i u p)`` and
    ``exp(i u p) Phi = exp(-u^2/2) exp(-u q) Phi``, so the value is
    ``exp(-u^2/2) E[exp(i (T_u P')(Y) - u Y)]`` with ``Y ~ N(0, 1/2)``.
    """
    if isinstance(g, GroupElement):
        u_exact, cs_exact = g.u, list(g.poly.coeffs)
    else:
        u_exact = to_rat(float(g[0]))
        cs_exact = [to_rat(float(x)) for x in g[1]]
    if len(cs_exact) > 9:
        raise ValidationError("charfn_general supports degree <= 8")
    averaged = [float(x) for x in t_apply(u_exact, cs_exact)]
    u = float(u_exact)
    # Y = X / sqrt2 with X standard normal
    scaled = [coef * SQRT2 ** (-k) for k, coef in enumerate(averaged)]
    return math.exp(-u * u / 2) * gauss_expectation(scaled, -u / SQRT2, spec)


# -- moments -----------------------------------------------------------------


def partitions(n: int, largest: int | None = None) -> Iterator[dict[int, int]]:
    """Partitions of ``n`` as ``{part: multiplicity}``, largest part first."""
    if largest is None:
        largest = n
    if n == 0:
        yield {}
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            out = dict(rest)
            out[k] = out.get(k, 0) + 1
            yield out


def moment_weights(a: float, b: float, c: float, n: int) -> list[float]:
    """``w_1 .. w_n`` with ``phi^(k)(0) / k! = (2i)^k w_k`` for the log-charfn."""
    alpha = 2 * a * a * c * c / 3
    beta = 4 * a * c * c / 3
    gamma = -(b * b + c * c) / 2
    out = []
    for k in range(1, n + 1):
        w = a**k / (2 * k)
        if k >= 2:
            w -= a ** (k - 2) * gamma / 4
        if k >= 3:
            w -= a ** (k - 3) * beta / 8
        if k >= 4:
            w += a ** (k - 4) * alpha / 16
        out.append(w)
    return out


def partition_moment(a: float, b: float, c: float, n: int, base: int = 2) -> float:
    """``base^n * sum over partitions of n!/prod(i_k!) prod w_k^{i_k}``.

    ``base = 2`` gives the vacuum moment; other bases exist only to exhibit
    mis-scaled variants of the expansion.
    """
    if n < 0:
        raise ValidationError("moment order must be non-negative")
    if n > 30:
        raise ValidationError("moment order above 30 is out of range")
    if n == 0:
        return 1.0
    w = moment_weights(a, b, c, n)
    total = 0.0
    for part in partitions(n):
        term = float(math.factorial(n))
        for k, mult in part.items():
            term *= w[k - 1] ** mult / math.factorial(mult)
        total += term
    return float(base) ** n * total


def moments_heis2(a: float, b: float, c: float, n: int) -> float:
    """``<Phi, X^n Phi>`` for ``X = A x^2 + B x + C y``."""
    return partition_moment(a, b, c, n, base=2)


def moments_oracle(a: float, b: float, c: float, n: int, dim: int | None = None) -> float:
    """Same moment from ``<e0, X^n e0>`` on a Fock truncation.

    ``X`` raises the level by at most 2, so any ``dim >= 2n + 4`` is exact up
    to round-off.
    """
    if n > 30:
        raise ValidationError("moment order above 30 is out of range")
    if dim is None:
        dim = 2 * n + 4
    if dim < 2 * n + 4:
        raise ValidationError(f"dim must be >= {2 * n + 4} for order {n}")
    return fock.oracle_moment(fock.heis2_observable(a, b, c, dim), n)
