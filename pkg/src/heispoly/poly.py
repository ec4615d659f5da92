"""Degree-bounded polynomials with exact rational coefficients.

A :class:`Poly` of bound ``N`` stores exactly ``N + 1`` coefficients in the
monomial basis ``1, x, ..., x^N``; trailing zeros are kept so the ambient
space is always explicit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import gmpy2

from .errors import ValidationError

# GMP-backed exact rationals; an order of magnitude faster than Fraction.
Rat = gmpy2.mpq
_RAT_TYPE = type(Rat(0))
RatLike = Union["Rat", Fraction, int, str, float]


def to_rat(value: RatLike) -> Rat:
    """Coerce ``value`` to a reduced exact rational.

    Floats are converted exactly (binary expansion), strings may be
    ``"p/q"`` or decimal literals.
    """
    if isinstance(value, _RAT_TYPE):
        return value
    if isinstance(value, bool):
        raise ValidationError("booleans are not rationals")
    if isinstance(value, float) and not math.isfinite(value):
        raise ValidationError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return Rat(value.numerator, value.denominator)
    if isinstance(value, (int, float, str)):
        try:
            return Rat(value)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            raise ValidationError(f"not a rational: {value!r}") from exc
    raise ValidationError(f"not a rational: {value!r}")


def rat_str(value: Rat) -> str:
    """Canonical ``"p/q"`` string; integers print without a denominator."""
    return str(value)


@dataclass(frozen=True, eq=False)
class Poly:
    bound: int
    coeffs: tuple[Rat, ...]

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise ValidationError("bound must be non-negative")
        if len(self.coeffs) != self.bound + 1:
            raise ValidationError(
                f"expected {self.bound + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RatLike], bound: int | None = None) -> Poly:
        cs = [to_rat(c) for c in coeffs]
        if bound is None:
            bound = max(len(cs) - 1, 0)
        if len(cs) > bound + 1:
            if any(cs[bound + 1:]):
                raise ValidationError(f"degree exceeds bound {bound}")
            cs = cs[: bound + 1]
        cs += [Rat(0)] * (bound + 1 - len(cs))
        return cls(bound, tuple(cs))

    @classmethod
    def zero(cls, bound: int) -> Poly:
        return cls(bound, (Rat(0),) * (bound + 1))

    @classmethod
    def monomial(cls, k: int, bound: int, scale: RatLike = 1) -> Poly:
        if not 0 <= k <= bound:
            raise ValidationError(f"x^{k} does not fit in bound {bound}")
        cs = [Rat(0)] * (bound + 1)
        cs[k] = to_rat(scale)
        return cls(bound, tuple(cs))

    @property
    def degree(self) -> int:
        """Actual degree; ``-1`` for the zero polynomial."""
        for k in range(self.bound, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def extend(self, bound: int) -> Poly:
        """Zero-extend to a larger bound."""
        if bound < self.bound:
            raise ValidationError(f"cannot shrink bound {self.bound} to {bound}")
        return Poly(bound, self.coeffs + (Rat(0),) * (bound - self.bound))

    def __call__(self, x: RatLike) -> Rat:
        return evaluate(self, x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = common_bound(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs[: self.degree + 1])

    def __add__(self, other: Poly) -> Poly:
        a, b = common_bound(self, other)
        return Poly(a.bound, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other: Poly) -> Poly:
        a, b = common_bound(self, other)
        return Poly(a.bound, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __neg__(self) -> Poly:
        return Poly(self.bound, tuple(-c for c in self.coeffs))

    def __mul__(self, scalar: RatLike) -> Poly:
        if isinstance(scalar, Poly):
            return NotImplemented
        s = to_rat(scalar)
        return Poly(self.bound, tuple(s * c for c in self.coeffs))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        terms = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return f"Poly[{self.bound}]({' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        return {"bound": self.bound, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> Poly:
        try:
            coeffs = data["coeffs"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("polynomial payload needs 'coeffs'") from exc
        return cls.from_coeffs(coeffs, data.get("bound"))


def common_bound(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Zero-extend both polynomials to the larger of their bounds."""
    n = max(p.bound, q.bound)
    return p.extend(n), q.extend(n)


def evaluate(p: Poly, x: RatLike) -> Rat:
    x = to_rat(x)
    acc = Rat(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    cs = [(k + 1) * p.coeffs[k + 1] for k in range(p.bound)]
    cs.append(Rat(0))
    return Poly(p.bound, tuple(cs))


def primitive(p: Poly) -> Poly:
    """Antiderivative with zero constant term; the bound grows by one."""
    cs = [Rat(0)] + [c / (k + 1) for k, c in enumerate(p.coeffs)]
    return Poly(p.bound + 1, tuple(cs))


def project_zero(p: Poly) -> tuple[Poly, Rat]:
    """Split ``p`` into ``(p - p(0), p(0))``."""
    c0 = p.coeffs[0]
    return Poly(p.bound, (Rat(0),) + p.coeffs[1:]), c0


def shift(p: Poly, u: RatLike) -> Poly:
    """``x -> p(x + u)`` computed by Horner composition (no matrices)."""
    u = to_rat(u)
    out = [Rat(0)] * (p.bound + 1)
    for c in reversed(p.coeffs):
        # out <- out * (x + u) + c
        nxt = [Rat(0)] * (p.bound + 1)
        for k, a in enumerate(out):
            if not a:
                continue
            nxt[k] += a * u
            if k + 1 <= p.bound:
                nxt[k + 1] += a
        nxt[0] += c
        out = nxt
    return Poly(p.bound, tuple(out))


def as_poly(value: Poly | Sequence[RatLike], bound: int | None = None) -> Poly:
    if isinstance(value, Poly):
        return value if bound is None else value.extend(bound)
    return Poly.from_coeffs(value, bound)
