"""Matrices of the averaging operator ``T_w`` and the shift ``S_u``.

Index convention: entry ``(m, n)`` carries the input coefficient of ``x^n``
into the output coefficient of ``x^m``.  Under this convention ``S_u``,
``T_w`` and ``T_w^{-1}`` are all unit upper triangular.

    (S_u)_{hk}  = C(k, h) u^(k-h)                   for h <= k
    (T_w)_{mn}  = n! / ((n+1-m)! m!) w^(n-m)         for m <= n
    T(w)        = T_w - I                           (strictly upper, nilpotent)
    T_w^{-1}    = sum_{k=0..N} (-1)^k T(w)^k

``T_0`` is the identity.  With exact rationals ``w == 0`` is decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .errors import ValidationError
from .poly import Poly, Rat, RatLike, rat_str, to_rat

_ZERO = Rat(0)
_ONE = Rat(1)


@dataclass(frozen=True)
class TriMatrix:
    bound: int
    rows: tuple[tuple[Rat, ...], ...]

    def __post_init__(self) -> None:
        n = self.bound + 1
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValidationError(f"expected a {n}x{n} matrix")

    @property
    def size(self) -> int:
        return self.bound + 1

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RatLike]]) -> TriMatrix:
        return cls(len(rows) - 1, tuple(tuple(to_rat(x) for x in r) for r in rows))

    def __getitem__(self, index: tuple[int, int]) -> Rat:
        i, j = index
        return self.rows[i][j]

    def __add__(self, other: TriMatrix) -> TriMatrix:
        _check_same(self, other)
        return TriMatrix(
            self.bound,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __sub__(self, other: TriMatrix) -> TriMatrix:
        _check_same(self, other)
        return TriMatrix(
            self.bound,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
        )

    def __neg__(self) -> TriMatrix:
        return TriMatrix(self.bound, tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, scalar: RatLike) -> TriMatrix:
        if isinstance(scalar, (TriMatrix, Poly)):
            return NotImplemented
        s = to_rat(scalar)
        return TriMatrix(self.bound, tuple(tuple(s * a for a in r) for r in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Poly):
            return apply(self, other)
        if not isinstance(other, TriMatrix):
            return NotImplemented
        _check_same(self, other)
        n = self.size
        out = []
        for i in range(n):
            acc = [_ZERO] * n
            for k, a in enumerate(self.rows[i]):
                if not a:
                    continue
                for j, b in enumerate(other.rows[k]):
                    if b:
                        acc[j] += a * b
            out.append(tuple(acc))
        return TriMatrix(self.bound, tuple(out))

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.size) for j in range(i))

    def diagonal(self) -> tuple[Rat, ...]:
        return tuple(self.rows[i][i] for i in range(self.size))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def to_json(self) -> dict:
        return {"bound": self.bound, "rows": [[rat_str(x) for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> TriMatrix:
        try:
            m = cls.from_rows(data["rows"])
        except (KeyError, TypeError) as exc:
            raise ValidationError("matrix payload needs 'rows'") from exc
        if "bound" in data and data["bound"] != m.bound:
            raise ValidationError("'bound' disagrees with the row count")
        return m


def _check_same(a: TriMatrix, b: TriMatrix) -> None:
    if a.bound != b.bound:
        raise ValidationError(f"bound mismatch: {a.bound} vs {b.bound}")


# -- cached integer/rational tables, independent of w ------------------------


@lru_cache(maxsize=None)
def _t_coef(n: int) -> tuple[tuple[Rat, ...], ...]:
    """``k!/((k+1-h)! h!)`` at ``(h, k)`` for ``h <= k``, else 0."""
    return tuple(
        tuple(
            Rat(factorial(k), factorial(k + 1 - h) * factorial(h)) if h <= k else _ZERO
            for k in range(n + 1)
        )
        for h in range(n + 1)
    )


@lru_cache(maxsize=None)
def _binom(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(comb(k, h) for k in range(n + 1)) for h in range(n + 1))


def _powers(w: Rat, n: int) -> list[Rat]:
    out = [_ONE]
    for _ in range(n):
        out.append(out[-1] * w)
    return out


# -- matrices ----------------------------------------------------------------


def identity(n: int) -> TriMatrix:
    return TriMatrix(
        n, tuple(tuple(_ONE if i == j else _ZERO for j in range(n + 1)) for i in range(n + 1))
    )


def s_matrix(u: RatLike, n: int) -> TriMatrix:
    u = to_rat(u)
    pw = _powers(u, n)
    b = _binom(n)
    return TriMatrix(
        n,
        tuple(
            tuple(b[h][k] * pw[k - h] if h <= k else _ZERO for k in range(n + 1))
            for h in range(n + 1)
        ),
    )


def t_matrix(w: RatLike, n: int) -> TriMatrix:
    w = to_rat(w)
    if w == 0:
        return identity(n)
    pw = _powers(w, n)
    t = _t_coef(n)
    return TriMatrix(
        n,
        tuple(
            tuple(t[m][k] * pw[k - m] if m <= k else _ZERO for k in range(n + 1))
            for m in range(n + 1)
        ),
    )


def d_matrix(n: int) -> TriMatrix:
    """Differentiation ``x^k -> k x^(k-1)`` (strictly upper triangular)."""
    return TriMatrix(
        n,
        tuple(
            tuple(Rat(k) if k == m + 1 else _ZERO for k in range(n + 1))
            for m in range(n + 1)
        ),
    )


def strict_part(w: RatLike, n: int) -> TriMatrix:
    """The nilpotent part ``T(w) = T_w - I``."""
    return t_matrix(w, n) - identity(n)


def t_inverse(w: RatLike, n: int) -> TriMatrix:
    """``T_w^{-1}`` as the finite Neumann series in the nilpotent part."""
    nil = strict_part(w, n)
    acc = identity(n)
    term = identity(n)
    for k in range(1, n + 1):
        term = term @ nil
        acc = acc - term if k % 2 else acc + term
    return acc


@lru_cache(maxsize=None)
def power_weights(k: int, n: int) -> tuple[tuple[Rat, ...], ...]:
    """Integer-ratio weights ``C^[k]_{ij}`` with ``T(w)^k_{ij} = t_ij(w) C^[k]_{ij}``.

    ``C^[0]`` is the identity pattern, ``C^[1]_{ij} = [i < j]`` and
    ``C^[k]_{ij} = sum_h C^(h)_{ij} C^[k-1]_{ih}`` with
    ``C^(h)_{ij} = (j+1-i)! / ((h+1-i)! (j+1-h)!)`` for ``i < h < j``.
    """
    size = n + 1
    if k == 0:
        return tuple(tuple(_ONE if i == j else _ZERO for j in range(size)) for i in range(size))
    if k == 1:
        return tuple(tuple(_ONE if i < j else _ZERO for j in range(size)) for i in range(size))
    prev = power_weights(k - 1, n)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = _ZERO
            for h in range(i + 1, j):
                if prev[i][h]:
                    acc += (
                        Rat(factorial(j + 1 - i), factorial(h + 1 - i) * factorial(j + 1 - h))
                        * prev[i][h]
                    )
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def t_power_closed(w: RatLike, k: int, n: int) -> TriMatrix:
    """``T(w)^k`` from the closed weight recursion (no matrix products)."""
    if k < 1:
        raise ValidationError("power must be >= 1; T(w)^0 is the identity")
    w = to_rat(w)
    pw = _powers(w, n)
    t = _t_coef(n)
    c = power_weights(k, n)
    return TriMatrix(
        n,
        tuple(
            tuple(
                t[i][j] * pw[j - i] * c[i][j] if i < j else _ZERO for j in range(n + 1)
            )
            for i in range(n + 1)
        ),
    )


def apply(m: TriMatrix, p: Poly) -> Poly:
    if m.bound != p.bound:
        raise ValidationError(f"bound mismatch: matrix {m.bound}, polynomial {p.bound}")
    return Poly(
        p.bound,
        tuple(sum((a * c for a, c in zip(row, p.coeffs) if a), _ZERO) for row in m.rows),
    )


# -- matrix-free actions on coefficient vectors (hot path of the group law) --


def t_apply(w: Rat, cs: Sequence[Rat]) -> list[Rat]:
    """``T_w`` applied to a coefficient vector."""
    if w == 0:
        return list(cs)
    n = len(cs) - 1
    t = _t_coef(n)
    pw = _powers(w, n)
    return [sum((t[m][k] * pw[k - m] * cs[k] for k in range(m, n + 1) if cs[k]), _ZERO) for m in range(n + 1)]


def s_apply(u: Rat, cs: Sequence[Rat]) -> list[Rat]:
    """``S_u`` applied to a coefficient vector."""
    if u == 0:
        return list(cs)
    n = len(cs) - 1
    b = _binom(n)
    pw = _powers(u, n)
    return [sum((b[h][k] * pw[k - h] * cs[k] for k in range(h, n + 1) if cs[k]), _ZERO) for h in range(n + 1)]


def t_solve(w: Rat, cs: Sequence[Rat]) -> list[Rat]:
    """Solve ``T_w y = cs`` by back substitution on the unit triangle."""
    if w == 0:
        return list(cs)
    n = len(cs) - 1
    t = _t_coef(n)
    pw = _powers(w, n)
    y = [_ZERO] * (n + 1)
    for m in range(n, -1, -1):
        acc = cs[m]
        for k in range(m + 1, n + 1):
            if y[k]:
                acc -= t[m][k] * pw[k - m] * y[k]
        y[m] = acc
    return y
