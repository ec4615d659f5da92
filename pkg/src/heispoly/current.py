"""Continuous (current-algebra) extension over rational step functions.

An element ``(c, g, f_1..f_N)`` stands for

    exp(i(c + p(g) + q(f_1) + ... + q^N(f_N)))

with ``p(g) = int g(s) p_s ds`` and ``q^k(f) = int f(s) q_s^k ds``.  The
operators ``T_g`` and ``S_g`` act pointwise in ``s``, so on a partition where
every function is constant the composition law is the discrete one cell by
cell; the degree-zero output of each cell integrates into the central term.

Step functions are compactly supported, right-open on each cell and kept in
canonical form (adjacent equal cells merged, zero cells trimmed at both ends).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain
from typing import Sequence

from .errors import ValidationError
from .group import GroupElement, compose
from .poly import Poly, Rat, RatLike, rat_str, to_rat

_ZERO = Rat(0)


def _canonical(breaks: Sequence[Rat], values: Sequence[Rat]) -> tuple[tuple[Rat, ...], tuple[Rat, ...]]:
    bs: list[Rat] = []
    vs: list[Rat] = []
    for i, v in enumerate(values):
        left, right = breaks[i], breaks[i + 1]
        if vs and v == vs[-1] and bs[-1] == left:
            bs[-1] = right
            continue
        if bs and bs[-1] == left:
            bs.append(right)
        else:
            bs.extend([left, right])
        vs.append(v)
    # trim zero cells at either end
    while vs and not vs[0]:
        vs.pop(0)
        bs.pop(0)
    while vs and not vs[-1]:
        vs.pop()
        bs.pop()
    if not vs:
        return (), ()
    return tuple(bs), tuple(vs)


@dataclass(frozen=True)
class StepFunction:
    breaks: tuple[Rat, ...] = ()
    values: tuple[Rat, ...] = ()

    def __post_init__(self) -> None:
        breaks = tuple(to_rat(b) for b in self.breaks)
        values = tuple(to_rat(v) for v in self.values)
        if breaks or values:
            if len(breaks) != len(values) + 1:
                raise ValidationError("need exactly one more breakpoint than values")
            if any(b >= c for b, c in zip(breaks, breaks[1:])):
                raise ValidationError("breakpoints must be strictly increasing")
        breaks, values = _canonical(breaks, values)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "values", values)

    @classmethod
    def indicator(cls, left: RatLike, right: RatLike, height: RatLike = 1) -> StepFunction:
        return cls((left, right), (height,))

    @classmethod
    def on_grid(cls, grid: Sequence[Rat], values: Sequence[Rat]) -> StepFunction:
        if len(grid) < 2:
            return cls()
        return cls(tuple(grid), tuple(values))

    def __call__(self, x: RatLike) -> Rat:
        x = to_rat(x)
        for i, v in enumerate(self.values):
            if self.breaks[i] <= x < self.breaks[i + 1]:
                return v
        return _ZERO

    def sample(self, grid: Sequence[Rat]) -> list[Rat]:
        """Cell values on a refinement ``grid`` of this function's breakpoints."""
        out = []
        i = 0
        for left in grid[:-1]:
            while i < len(self.values) and self.breaks[i + 1] <= left:
                i += 1
            if i < len(self.values) and self.breaks[i] <= left:
                out.append(self.values[i])
            else:
                out.append(_ZERO)
        return out

    def _pointwise(self, other: StepFunction, op) -> StepFunction:
        grid = refine(self, other)
        return StepFunction.on_grid(
            grid, [op(a, b) for a, b in zip(self.sample(grid), other.sample(grid))]
        )

    def __add__(self, other: StepFunction) -> StepFunction:
        return self._pointwise(other, lambda a, b: a + b)

    def __sub__(self, other: StepFunction) -> StepFunction:
        return self._pointwise(other, lambda a, b: a - b)

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return self._pointwise(other, lambda a, b: a * b)
        s = to_rat(other)
        return StepFunction(self.breaks, tuple(s * v for v in self.values))

    __rmul__ = __mul__

    def __neg__(self) -> StepFunction:
        return StepFunction(self.breaks, tuple(-v for v in self.values))

    def __bool__(self) -> bool:
        return bool(self.values)

    def to_json(self) -> dict:
        return {"breaks": [rat_str(b) for b in self.breaks], "values": [rat_str(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> StepFunction:
        if not isinstance(data, dict):
            raise ValidationError("step function payload must be an object")
        return cls(tuple(data.get("breaks", ())), tuple(data.get("values", ())))


def refine(*fs: StepFunction) -> tuple[Rat, ...]:
    """Common breakpoint grid on which every argument is cellwise constant."""
    return tuple(sorted(set(chain.from_iterable(f.breaks for f in fs))))


def inner(a: StepFunction, b: StepFunction) -> Rat:
    """Exact ``int a(s) b(s) ds``."""
    grid = refine(a, b)
    return sum(
        (x * y * (right - left) for x, y, left, right in zip(a.sample(grid), b.sample(grid), grid, grid[1:])),
        _ZERO,
    )


@dataclass(frozen=True)
class CurrentElement:
    bound: int
    central: Rat
    g: StepFunction
    fs: tuple[StepFunction, ...]

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValidationError("current elements need bound >= 1")
        if len(self.fs) != self.bound:
            raise ValidationError(f"expected {self.bound} coefficient functions, got {len(self.fs)}")
        object.__setattr__(self, "central", to_rat(self.central))
        object.__setattr__(self, "fs", tuple(self.fs))

    @classmethod
    def neutral(cls, bound: int) -> CurrentElement:
        return cls(bound, _ZERO, StepFunction(), (StepFunction(),) * bound)

    def functions(self) -> tuple[StepFunction, ...]:
        return (self.g, *self.fs)

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "central": rat_str(self.central),
            "g": self.g.to_json(),
            "fs": [f.to_json() for f in self.fs],
        }

    @classmethod
    def from_json(cls, data: dict, bound: int | None = None) -> CurrentElement:
        if not isinstance(data, dict):
            raise ValidationError("current element payload must be an object")
        fs = [StepFunction.from_json(f) for f in data.get("fs", [])]
        n = data.get("bound", bound if bound is not None else len(fs))
        if bound is not None and n != bound:
            raise ValidationError(f"payload bound {n} disagrees with N={bound}")
        fs += [StepFunction()] * (n - len(fs))
        g = StepFunction.from_json(data.get("g", {}))
        return cls(n, to_rat(data.get("central", 0)), g, tuple(fs))


def _check_bounds(e1: CurrentElement, e2: CurrentElement) -> None:
    if e1.bound != e2.bound:
        raise ValidationError(f"bound mismatch: {e1.bound} vs {e2.bound}")


def midpoints(grid: Sequence[Rat]) -> list[Rat]:
    return [(a + b) / 2 for a, b in zip(grid, grid[1:])]


def current_compose(
    e1: CurrentElement, e2: CurrentElement, extra_breaks: Sequence[RatLike] = ()
) -> CurrentElement:
    """Composition law, applied cell by cell on the common refinement.

    ``extra_breaks`` refines the working grid further; the result must not
    depend on it.
    """
    _check_bounds(e1, e2)
    n = e1.bound
    grid = tuple(
        sorted(set(refine(*e1.functions(), *e2.functions())) | {to_rat(b) for b in extra_breaks})
    )
    g1, g2 = e1.g.sample(grid), e2.g.sample(grid)
    f1 = [f.sample(grid) for f in e1.fs]
    f2 = [f.sample(grid) for f in e2.fs]
    central = e1.central + e2.central
    out_cols: list[list[Rat]] = [[] for _ in range(n)]
    for cell in range(len(grid) - 1):
        a = GroupElement(g1[cell], Poly(n, (_ZERO, *(f[cell] for f in f1))))
        b = GroupElement(g2[cell], Poly(n, (_ZERO, *(f[cell] for f in f2))))
        c = compose(a, b).poly.coeffs
        central += c[0] * (grid[cell + 1] - grid[cell])
        for k in range(n):
            out_cols[k].append(c[k + 1])
    fs = tuple(StepFunction.on_grid(grid, col) for col in out_cols)
    return CurrentElement(n, central, e1.g + e2.g, fs)


def galilei_compose_closed(e1: CurrentElement, e2: CurrentElement) -> CurrentElement:
    """Closed form of the law at N = 2 in terms of pairings."""
    _check_bounds(e1, e2)
    if e1.bound != 2:
        raise ValidationError("galilei_compose_closed needs N = 2")
    g, (f1, f2) = e1.g, e1.fs
    big_g, (big_f1, big_f2) = e2.g, e2.fs
    sixth = Rat(1, 6)
    half = Rat(1, 2)
    central = (
        e1.central + e2.central
        + half * inner(g, big_f1) - half * inner(big_g, f1)
        + sixth * inner(g, (g - big_g) * big_f2)
        + sixth * inner(big_g, (big_g - g) * f2)
    )
    q1 = f1 + big_f1 + g * big_f2 - big_g * f2
    q2 = f2 + big_f2
    return CurrentElement(2, central, g + big_g, (q1, q2))


def weyl_phase(
    f: tuple[StepFunction, StepFunction], h: tuple[StepFunction, StepFunction]
) -> Rat:
    """``-Im <f, h>`` for complex test functions given as (real, imag) pairs."""
    return -(inner(f[0], h[1]) - inner(f[1], h[0]))


def weyl_element(f: tuple[StepFunction, StepFunction]) -> CurrentElement:
    """``q(f_re) + p(f_im)`` as an N = 1 element, without the sqrt2 factor.

    The Weyl operator of ``f`` uses ``sqrt2 f``; the central term of a
    composition is bilinear, so the unscaled phase is half the Weyl phase.
    """
    return CurrentElement(1, _ZERO, f[1], (f[0],))
