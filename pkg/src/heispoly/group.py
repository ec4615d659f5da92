"""The polynomial Heisenberg group Heis(1,1,N).

An element ``(u, P')`` stands for the unitary ``exp(i(u p + P'(q)))`` with
``deg P' <= N``.  The constant term of ``P'`` is the central coordinate, so
``R x R_N[x]_0`` and ``R_N[x]`` are identified and :func:`project_zero`
recovers the split form.  The group law is

    (u, P') o (v, Q') = (u + v, T_{u+v}^{-1} (T_u P' + T_v S_u Q'))

and is evaluated in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import operators as ops
from .errors import ValidationError
from .poly import Poly, Rat, RatLike, project_zero, rat_str, to_rat


@dataclass(frozen=True)
class GroupElement:
    u: Rat
    poly: Poly

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", to_rat(self.u))

    @property
    def bound(self) -> int:
        return self.poly.bound

    @classmethod
    def make(cls, u: RatLike, coeffs: Sequence[RatLike] | Poly, bound: int | None = None) -> GroupElement:
        if isinstance(coeffs, Poly):
            poly = coeffs if bound is None else coeffs.extend(bound)
        else:
            poly = Poly.from_coeffs(coeffs, bound)
        return cls(to_rat(u), poly)

    def __matmul__(self, other: GroupElement) -> GroupElement:
        return compose(self, other)

    def __repr__(self) -> str:
        return f"GroupElement(u={self.u}, {self.poly!r})"

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "u": rat_str(self.u),
            "coeffs": [rat_str(c) for c in self.poly.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict, bound: int | None = None) -> GroupElement:
        if not isinstance(data, dict) or "u" not in data or "coeffs" not in data:
            raise ValidationError("group element payload needs 'u' and 'coeffs'")
        declared = data.get("bound")
        if declared is not None and bound is not None and declared != bound:
            raise ValidationError(f"payload bound {declared} disagrees with N={bound}")
        return cls.make(data["u"], data["coeffs"], bound if bound is not None else declared)

    def to_floats(self) -> tuple[float, list[float]]:
        return float(self.u), [float(c) for c in self.poly.coeffs]


def _check_bounds(g1: GroupElement, g2: GroupElement) -> None:
    if g1.bound != g2.bound:
        raise ValidationError(f"bound mismatch: {g1.bound} vs {g2.bound}")


def identity(n: int) -> GroupElement:
    return GroupElement(Rat(0), Poly.zero(n))


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(-g.u, -g.poly)


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    _check_bounds(g1, g2)
    u, v = g1.u, g2.u
    a = ops.t_apply(u, g1.poly.coeffs)
    b = ops.t_apply(v, ops.s_apply(u, g2.poly.coeffs))
    out = ops.t_solve(u + v, [x + y for x, y in zip(a, b)])
    return GroupElement(u + v, Poly(g1.bound, tuple(out)))


def compose_matrices(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Same law, spelled out with explicit matrices (slow reference path)."""
    _check_bounds(g1, g2)
    n = g1.bound
    u, v = g1.u, g2.u
    rhs = ops.t_matrix(u, n) @ g1.poly + ops.t_matrix(v, n) @ (ops.s_matrix(u, n) @ g2.poly)
    return GroupElement(u + v, ops.t_inverse(u + v, n) @ rhs)


def _require_zero_constant(*gs: GroupElement) -> None:
    for g in gs:
        if g.poly.coeffs[0] != 0:
            raise ValidationError("cocycle arguments must have zero constant term")


def sigma(g1: GroupElement, g2: GroupElement) -> Rat:
    """Scalar phase produced by composing two zero-constant elements."""
    _require_zero_constant(g1, g2)
    return project_zero(compose(g1, g2).poly)[1]


def sigma_closed(g1: GroupElement, g2: GroupElement) -> Rat:
    """The same scalar from the explicit double sum over power weights.

    sum_j [ (u+v)^j / (j+1) * sum_m (-1)^m C^[m]_{0j} ]
        * [ sum_{h>=j} t_jh(u) a_h + t_jh(v) sum_{k>=h} (S_u)_hk b_k ]

    with ``t_jj = 1`` and ``C^[0]_{0j} = delta_{j0}``.
    """
    _check_bounds(g1, g2)
    _require_zero_constant(g1, g2)
    n = g1.bound
    u, v = g1.u, g2.u
    alpha, beta = g1.poly.coeffs, g2.poly.coeffs
    w = u + v
    weights = [ops.power_weights(m, n) for m in range(n + 1)]
    tc = ops._t_coef(n)
    binom = ops._binom(n)

    def t_entry(j: int, h: int, x: Rat) -> Rat:
        return Rat(1) if j == h else tc[j][h] * x ** (h - j)

    total = Rat(0)
    for j in range(n + 1):
        row = sum(((-1) ** m * weights[m][0][j] for m in range(n + 1)), Rat(0))
        left = w**j / (j + 1) * row
        if not left:
            continue
        right = Rat(0)
        for h in range(j, n + 1):
            shifted = sum((binom[h][k] * u ** (k - h) * beta[k] for k in range(h, n + 1)), Rat(0))
            right += t_entry(j, h, u) * alpha[h] + t_entry(j, h, v) * shifted
        total += left * right
    return total


def compose_n1_closed(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Heisenberg law at N = 1: constant picks up ``u b1/2 - v a1/2``."""
    _check_bounds(g1, g2)
    if g1.bound != 1:
        raise ValidationError("compose_n1_closed needs N = 1")
    u, v = g1.u, g2.u
    a0, a1 = g1.poly.coeffs
    b0, b1 = g2.poly.coeffs
    c0 = a0 + b0 + u * b1 / 2 - v * a1 / 2
    return GroupElement(u + v, Poly(1, (c0, a1 + b1)))


def compose_n2_closed(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Galilei law at N = 2."""
    _check_bounds(g1, g2)
    if g1.bound != 2:
        raise ValidationError("compose_n2_closed needs N = 2")
    u, v = g1.u, g2.u
    a0, a1, a2 = g1.poly.coeffs
    b0, b1, b2 = g2.poly.coeffs
    gamma = (
        a0 + b0 - v * a1 / 2 + u * b1 / 2
        + (v - u) * v * a2 / 6 + (u - v) * u * b2 / 6
    )
    beta = a1 + b1 - v * a2 + u * b2
    alpha = a2 + b2
    return GroupElement(u + v, Poly(2, (gamma, beta, alpha)))


def embed(g: GroupElement, m: int) -> GroupElement:
    """Inclusion ``Heis(1,1,N) -> Heis(1,1,M)`` for ``M >= N``."""
    if m < g.bound:
        raise ValidationError(f"cannot embed bound {g.bound} into {m}")
    return GroupElement(g.u, g.poly.extend(m))
