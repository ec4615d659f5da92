"""Truncated Fock-space oracle.

Dense number-basis matrices for ``q = (b + b^+)/sqrt2`` and
``p = (b - b^+)/(i sqrt2)`` on the first ``D`` levels, a scaling-and-squaring
matrix exponential, and vacuum expectations built from them.  Everything here
is floating point and deliberately independent of the closed forms in
:mod:`heispoly.vacuum`.

Truncation only corrupts the top few levels, so every comparison is made at
moderate coefficients and checked under dimension doubling.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, ValidationError
from .group import GroupElement, compose

MAX_DIM = 512


@lru_cache(maxsize=16)
def _canonical(dim: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1)
    q = (a + a.T) / np.sqrt(2.0)
    p = (a - a.T) / (1j * np.sqrt(2.0))
    q.setflags(write=False)
    p.setflags(write=False)
    return q, p


def build_canonical(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Return read-only ``(q, p)`` truncated to ``dim`` levels."""
    if dim < 2:
        raise ValidationError("Fock truncation needs dim >= 2")
    if dim > MAX_DIM:
        raise ValidationError(f"dim {dim} exceeds the dense cap {MAX_DIM}")
    return _canonical(dim)


def vacuum(dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[0] = 1.0
    return v


def expm(m: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a Taylor core."""
    m = np.asarray(m, dtype=complex)
    norm = np.linalg.norm(m, 1)
    squarings = 0
    if norm > 0.5:
        squarings = int(np.ceil(np.log2(norm / 0.5)))
    a = m / 2.0**squarings
    result = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for k in range(1, 60):
        term = term @ a / k
        result += term
        if np.linalg.norm(term, 1) <= tol * 1e-4 * max(1.0, np.linalg.norm(result, 1)):
            break
    else:
        raise ConvergenceError("Taylor core of expm did not converge")
    for _ in range(squarings):
        result = result @ result
    return result


def polynomial_of_q(coeffs: Sequence[float], dim: int) -> np.ndarray:
    """``sum_k c_k q^k`` with ``q^k`` the k-th power of the truncated ``q``."""
    q, _ = build_canonical(dim)
    out = np.zeros((dim, dim), dtype=complex)
    power = np.eye(dim)
    for k, c in enumerate(coeffs):
        if k:
            power = power @ q
        if c:
            out += float(c) * power
    return out


def generator(u: float, coeffs: Sequence[float], dim: int) -> np.ndarray:
    """The Hermitian matrix of ``u p + P'(q)``."""
    _, p = build_canonical(dim)
    return float(u) * p + polynomial_of_q(coeffs, dim)


def heis2_observable(a: float, b: float, c: float, dim: int) -> np.ndarray:
    """``A (sqrt2 q)^2 + B (sqrt2 q) + C (sqrt2 p)``."""
    q, p = build_canonical(dim)
    x = np.sqrt(2.0) * q
    return a * (x @ x) + b * x + c * np.sqrt(2.0) * p


def evolve_vacuum(h: np.ndarray) -> np.ndarray:
    """``exp(i h) e_0``."""
    return expm(1j * h)[:, 0]


def _doubling_partner(dim: int) -> int:
    return 2 * dim if 2 * dim <= MAX_DIM else dim // 2


def oracle_charfn(
    u: float,
    coeffs: Sequence[float],
    dim: int = 64,
    *,
    check: bool = True,
    tol: float = 1e-6,
) -> complex:
    """``<e0, exp(i(u p + P'(q))) e0>`` at truncation ``dim``.

    With ``check`` the value is recomputed at a doubled (or, at the cap,
    halved) dimension and a disagreement above ``tol`` raises
    :class:`ConvergenceError`.
    """
    if dim < 16:
        raise ValidationError("oracle_charfn needs dim >= 16")
    value = complex(evolve_vacuum(generator(u, coeffs, dim))[0])
    if check:
        other = complex(evolve_vacuum(generator(u, coeffs, _doubling_partner(dim)))[0])
        if not abs(value - other) <= tol:
            raise ConvergenceError(
                f"truncation not converged at dim={dim}: |delta|={abs(value - other):.3e}"
            )
    return value


def oracle_overlap(h1: np.ndarray, h2: np.ndarray) -> complex:
    """``<exp(i h1) e0, exp(i h2) e0>`` (antilinear in the first slot)."""
    return complex(np.vdot(evolve_vacuum(h1), evolve_vacuum(h2)))


def oracle_weyl_relation(
    g1: GroupElement, g2: GroupElement, dim: int, panel: int = 4
) -> float:
    """Residual of ``W(g1) W(g2) = W(g1 o g2)`` on low-lying basis vectors.

    The composed element is computed exactly, then cast to floats.  Returns
    the largest 2-norm residual over ``e_0 .. e_{panel-1}``.
    """
    if dim < 32:
        raise ValidationError("oracle_weyl_relation needs dim >= 32")
    g12 = compose(g1, g2)
    w1 = expm(1j * generator(*g1.to_floats(), dim))
    w2 = expm(1j * generator(*g2.to_floats(), dim))
    w12 = expm(1j * generator(*g12.to_floats(), dim))
    cols = slice(0, panel)
    lhs = w1 @ w2[:, cols]
    return float(np.max(np.linalg.norm(lhs - w12[:, cols], axis=0)))


def oracle_moment(h: np.ndarray, n: int) -> float:
    """``<e0, h^n e0>`` by repeated matrix-vector products (real part)."""
    v = vacuum(h.shape[0])
    for _ in range(n):
        v = h @ v
    return float(v[0].real)
