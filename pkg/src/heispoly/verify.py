"""Randomized identity checks behind ``heispoly verify``.

Each suite draws its cases from a seeded :class:`random.Random`, so a report
is reproducible from ``(suite, seed, cases)``.  A failure records the name of
the violated identity and the offending payload.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import current as cur
from . import fock
from . import group as grp
from . import operators as ops
from . import vacuum as vac
from .poly import Poly, Rat

SUITES = ("group", "matrices", "vacuum", "current", "oracle")


# -- random data -------------------------------------------------------------


def random_rat(rng: random.Random, num: int = 9, den: int = 6) -> Rat:
    return Rat(rng.randint(-num, num), rng.randint(1, den))


def random_nonzero_rat(rng: random.Random) -> Rat:
    while True:
        r = random_rat(rng)
        if r:
            return r


def random_element(rng: random.Random, n: int, zero_constant: bool = False) -> grp.GroupElement:
    coeffs = [random_rat(rng) for _ in range(n + 1)]
    if zero_constant:
        coeffs[0] = Rat(0)
    return grp.GroupElement(random_rat(rng), Poly(n, tuple(coeffs)))


def random_step(rng: random.Random, cells: int = 3, lo: int = -4, hi: int = 4) -> cur.StepFunction:
    if rng.random() < 0.15:
        return cur.StepFunction()
    pts = sorted(rng.sample(range(2 * lo, 2 * hi + 1), cells + 1))
    breaks = tuple(Rat(p, 2) for p in pts)
    return cur.StepFunction(breaks, tuple(random_rat(rng, 5, 3) for _ in range(cells)))


def random_current(rng: random.Random, n: int) -> cur.CurrentElement:
    return cur.CurrentElement(
        n,
        random_rat(rng),
        random_step(rng),
        tuple(random_step(rng) for _ in range(n)),
    )


def el_json(g: grp.GroupElement) -> dict:
    return g.to_json()


# -- report types ------------------------------------------------------------


@dataclass
class Failure:
    identity: str
    case: int
    payload: dict

    def to_json(self) -> dict:
        return {"identity": self.identity, "case": self.case, "payload": self.payload}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    checked: dict[str, int] = field(default_factory=dict)
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, identity: str, case: int, ok: bool, payload: Callable[[], dict]) -> None:
        self.checked[identity] = self.checked.get(identity, 0) + 1
        if not ok:
            self.failures.append(Failure(identity, case, payload()))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "passed": self.passed,
            "checked": dict(sorted(self.checked.items())),
            "failures": [f.to_json() for f in sorted(self.failures, key=lambda f: f.case)],
        }


Check = Iterator[tuple[str, bool, Callable[[], dict]]]


# -- group -------------------------------------------------------------------


def group_checks(rng: random.Random, n: int) -> Check:
    a, b, c = (random_element(rng, n) for _ in range(3))
    payload = lambda: {"n": n, "a": el_json(a), "b": el_json(b), "c": el_json(c)}  # noqa: E731
    e = grp.identity(n)
    yield "associativity", grp.compose(grp.compose(a, b), c) == grp.compose(a, grp.compose(b, c)), payload
    yield "left identity", grp.compose(e, a) == a, payload
    yield "right identity", grp.compose(a, e) == a, payload
    yield "right inverse", grp.compose(a, grp.inverse(a)) == e, payload
    yield "left inverse", grp.compose(grp.inverse(a), a) == e, payload


def cocycle_checks(rng: random.Random, n: int) -> Check:
    a = random_element(rng, n, zero_constant=True)
    b = random_element(rng, n, zero_constant=True)
    c = random_element(rng, n, zero_constant=True)
    payload = lambda: {"n": n, "a": el_json(a), "b": el_json(b), "c": el_json(c)}  # noqa: E731
    yield "sigma_closed == sigma", grp.sigma_closed(a, b) == grp.sigma(a, b), payload
    # both bracketings of a three-fold product leave the same scalar
    left = grp.compose(grp.compose(a, b), c).poly.coeffs[0]
    right = grp.compose(a, grp.compose(b, c)).poly.coeffs[0]
    yield "cocycle consistency", left == right, payload


def closed_law_checks(rng: random.Random) -> Check:
    a1, b1 = random_element(rng, 1), random_element(rng, 1)
    yield "N=1 closed law", grp.compose_n1_closed(a1, b1) == grp.compose(a1, b1), (
        lambda: {"a": el_json(a1), "b": el_json(b1)}
    )
    a2, b2 = random_element(rng, 2), random_element(rng, 2)
    yield "N=2 closed law", grp.compose_n2_closed(a2, b2) == grp.compose(a2, b2), (
        lambda: {"a": el_json(a2), "b": el_json(b2)}
    )


def weyl_n1_check(rng: random.Random) -> Check:
    al, be, al2, be2 = (random_rat(rng) for _ in range(4))
    # sqrt2 scaling enters the bilinear phase squared: 2 * sigma(unscaled)
    g1 = grp.GroupElement(-al, Poly(1, (Rat(0), be)))
    g2 = grp.GroupElement(-al2, Poly(1, (Rat(0), be2)))
    yield "N=1 Weyl phase", 2 * grp.sigma(g1, g2) == al2 * be - al * be2, (
        lambda: {"alpha": str(al), "beta": str(be), "alpha'": str(al2), "beta'": str(be2)}
    )


def run_group(rng: random.Random, report: SuiteReport) -> None:
    for case in range(report.cases):
        n = 1 + case % 6
        for checks in (group_checks(rng, n), cocycle_checks(rng, n), closed_law_checks(rng), weyl_n1_check(rng)):
            for name, ok, payload in checks:
                report.record(name, case, ok, payload)


# -- matrices ----------------------------------------------------------------


def commutation_checks(u: Rat, v: Rat, w: Rat, n: int) -> Check:
    """The five commutation/averaging identities plus shift group law."""
    payload = lambda: {"n": n, "u": str(u), "v": str(v), "w": str(w)}  # noqa: E731
    tu, tv, tw = ops.t_matrix(u, n), ops.t_matrix(v, n), ops.t_matrix(w, n)
    su, sv = ops.s_matrix(u, n), ops.s_matrix(v, n)
    yield "T_w S_u == S_u T_w", tw @ su == su @ tw, payload
    yield "T_w T_u == T_u T_w", tw @ tu == tu @ tw, payload
    if u:
        rhs = (1 + v / u) * ops.t_matrix(u + v, n) - (v / u) * tv
        yield "T_u S_v == (1+v/u) T_{u+v} - (v/u) T_v", tu @ sv == rhs, payload
    yield "T_u S_{-u} == T_{-u}", tu @ ops.s_matrix(-u, n) == ops.t_matrix(-u, n), payload
    if u and v:
        # the right side carries one derivative: (e^{(u+v)D} - e^{uD} - e^{vD} + 1)/(uvD)
        rhs = (1 / v + 1 / u) * ops.t_matrix(u + v, n) - (1 / u) * tv - (1 / v) * tu
        yield "D T_u T_v == (1/v+1/u) T_{u+v} - T_v/u - T_u/v", ops.d_matrix(n) @ (tu @ tv) == rhs, payload
    yield "S_u S_v == S_{u+v}", su @ sv == ops.s_matrix(u + v, n), payload
    yield "S_u S_{-u} == I", su @ ops.s_matrix(-u, n) == ops.identity(n), payload


def power_checks(w: Rat, n: int) -> Check:
    payload = lambda: {"n": n, "w": str(w)}  # noqa: E731
    nil = ops.strict_part(w, n)
    acc = nil
    for k in range(1, n + 2):
        if k > 1:
            acc = acc @ nil
        yield "T(w)^k closed == repeated product", ops.t_power_closed(w, k, n) == acc, payload
    yield "T(w)^(N+1) == 0", ops.t_power_closed(w, n + 1, n).is_zero(), payload
    inv = ops.t_inverse(w, n)
    yield "T_w^-1 T_w == I", inv @ ops.t_matrix(w, n) == ops.identity(n), payload
    yield "unit diagonal", all(d == 1 for d in ops.t_matrix(w, n).diagonal() + inv.diagonal()), payload


def run_matrices(rng: random.Random, report: SuiteReport) -> None:
    for case in range(report.cases):
        n = 1 + case % 8
        u, v, w = random_rat(rng), random_rat(rng), random_rat(rng)
        for name, ok, payload in chain_checks(commutation_checks(u, v, w, n), power_checks(w, n)):
            report.record(name, case, ok, payload)


def chain_checks(*checks: Check) -> Check:
    for c in checks:
        yield from c


# -- vacuum ------------------------------------------------------------------


def run_vacuum(rng: random.Random, report: SuiteReport) -> None:
    for case in range(report.cases):
        al, be, ga = (rng.uniform(-2, 2) for _ in range(3))
        closed = vac.charfn_quadratic(al, be, ga)
        quad = vac.gauss_expectation([0.0, be, al], ga)
        report.record("charfn_quadratic vs quadrature", case, abs(closed - quad) <= 1e-8,
                      lambda: {"alpha": al, "beta": be, "gamma": ga, "delta": abs(closed - quad)})
        a, b, c = (rng.uniform(-1, 1) for _ in range(3))
        t = rng.uniform(-0.5, 0.5)
        ref = vac.charfn_heis2(a, b, c, t)
        gen = vac.charfn_general(vac.heis2_to_group(a, b, c, t))
        report.record("charfn_general vs charfn_heis2", case, abs(ref - gen) <= 1e-8,
                      lambda: {"A": a, "B": b, "C": c, "t": t, "delta": abs(ref - gen)})
        report.record("conjugate symmetry", case,
                      abs(vac.charfn_heis2(a, b, c, -t) - ref.conjugate()) <= 1e-12,
                      lambda: {"A": a, "B": b, "C": c, "t": t})
        report.record("|charfn| <= 1", case, abs(ref) <= 1 + 1e-12,
                      lambda: {"A": a, "B": b, "C": c, "t": t})
        n = case % 13
        m, o = vac.moments_heis2(a, b, c, n), vac.moments_oracle(a, b, c, n)
        report.record("moments vs oracle", case, moment_close(m, o, a, b, c, n),
                      lambda: {"A": a, "B": b, "C": c, "n": n, "formula": m, "oracle": o})


def moment_scale(a: float, b: float, c: float, n: int) -> float:
    """``E[|X|^n]``-sized yardstick: the n-th moment of ``|A| x^2 + |B| x + |C| y``-type scale."""
    s = 3 * abs(a) + abs(b) + abs(c)
    return s**n * math.factorial(n) if n else 1.0


def moment_close(m: float, o: float, a: float, b: float, c: float, n: int, rel: float = 1e-9) -> bool:
    # relative comparison; a scale floor guards moments that vanish by symmetry
    return abs(m - o) <= rel * max(abs(o), 1e-6 * moment_scale(a, b, c, n))


# -- current -----------------------------------------------------------------


def current_checks(rng: random.Random, n: int) -> Check:
    e1, e2, e3 = (random_current(rng, n) for _ in range(3))
    payload = lambda: {"n": n, "e1": e1.to_json(), "e2": e2.to_json(), "e3": e3.to_json()}  # noqa: E731
    c12 = cur.current_compose(e1, e2)
    yield "associativity", cur.current_compose(c12, e3) == cur.current_compose(e1, cur.current_compose(e2, e3)), payload
    grid = cur.refine(*e1.functions(), *e2.functions())
    yield "refinement invariance", cur.current_compose(e1, e2, cur.midpoints(grid)) == c12, payload
    yield "neutral element", cur.current_compose(e1, cur.CurrentElement.neutral(n)) == e1, payload
    # single unit cell: matches the discrete law on the cell values
    vals1 = [random_rat(rng) for _ in range(n + 1)]
    vals2 = [random_rat(rng) for _ in range(n + 1)]
    cell = lambda vals: cur.CurrentElement(  # noqa: E731
        n, Rat(0), cur.StepFunction.indicator(0, 1, vals[0]),
        tuple(cur.StepFunction.indicator(0, 1, x) for x in vals[1:]),
    )
    cont = cur.current_compose(cell(vals1), cell(vals2))
    disc = grp.compose(
        grp.GroupElement(vals1[0], Poly(n, (Rat(0), *vals1[1:]))),
        grp.GroupElement(vals2[0], Poly(n, (Rat(0), *vals2[1:]))),
    )
    expected = cur.CurrentElement(
        n, disc.poly.coeffs[0], cur.StepFunction.indicator(0, 1, disc.u),
        tuple(cur.StepFunction.indicator(0, 1, x) for x in disc.poly.coeffs[1:]),
    )
    yield "cellwise-discrete equivalence", cont == expected, (
        lambda: {"n": n, "lhs": [str(x) for x in vals1], "rhs": [str(x) for x in vals2]}
    )


def galilei_checks(rng: random.Random) -> Check:
    e1, e2 = random_current(rng, 2), random_current(rng, 2)
    yield "Galilei closed form", cur.galilei_compose_closed(e1, e2) == cur.current_compose(e1, e2), (
        lambda: {"e1": e1.to_json(), "e2": e2.to_json()}
    )


def weyl_phase_checks(rng: random.Random) -> Check:
    f = (random_step(rng), random_step(rng))
    h = (random_step(rng), random_step(rng))
    composed = cur.current_compose(cur.weyl_element(f), cur.weyl_element(h))
    yield "Weyl phase consistency", 2 * composed.central == cur.weyl_phase(f, h), (
        lambda: {"f": [x.to_json() for x in f], "h": [x.to_json() for x in h]}
    )


def run_current(rng: random.Random, report: SuiteReport) -> None:
    for case in range(report.cases):
        n = 1 + case % 4
        for name, ok, payload in chain_checks(current_checks(rng, n), galilei_checks(rng), weyl_phase_checks(rng)):
            report.record(name, case, ok, payload)


# -- oracle ------------------------------------------------------------------


def run_oracle(rng: random.Random, report: SuiteReport) -> None:
    for case in range(report.cases):
        a, b, c = (rng.uniform(-1, 1) for _ in range(3))
        t = rng.uniform(-0.5, 0.5)
        ref = vac.charfn_heis2(a, b, c, t)
        u, coeffs = vac.heis2_to_group(a, b, c, t)
        val = fock.oracle_charfn(u, coeffs, 128, check=False)
        report.record("charfn_heis2 vs Fock oracle", case, abs(val - ref) <= 1e-5,
                      lambda: {"A": a, "B": b, "C": c, "t": t, "delta": abs(val - ref)})
        p1 = tuple(rng.uniform(-1, 1) for _ in range(3))
        p2 = tuple(rng.uniform(-1, 1) for _ in range(3))
        ov = vac.overlap_heis2(p1, p2, t)
        orc = fock.oracle_overlap(t * fock.heis2_observable(*p1, 128), t * fock.heis2_observable(*p2, 128))
        report.record("overlap vs Fock oracle", case, abs(ov - orc) <= 1e-5,
                      lambda: {"p1": p1, "p2": p2, "t": t, "delta": abs(ov - orc)})
        g1 = scaled_element(rng, 2, Rat(3, 10))
        g2 = scaled_element(rng, 2, Rat(3, 10))
        res = fock.oracle_weyl_relation(g1, g2, 64)
        report.record("polynomial Weyl relation", case, res < 1e-5,
                      lambda: {"g1": g1.to_json(), "g2": g2.to_json(), "residual": res})


def scaled_element(rng: random.Random, n: int, scale: Rat) -> grp.GroupElement:
    """Random element with every coordinate in ``[-scale, scale]``."""
    coeffs = tuple(scale * Rat(rng.randint(-10, 10), 10) for _ in range(n + 1))
    return grp.GroupElement(scale * Rat(rng.randint(-10, 10), 10), Poly(n, coeffs))


_RUNNERS = {
    "group": run_group,
    "matrices": run_matrices,
    "vacuum": run_vacuum,
    "current": run_current,
    "oracle": run_oracle,
}


def run_suite(suite: str, seed: int = 0, cases: int = 100) -> SuiteReport:
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = SuiteReport(suite, seed, cases)
    _RUNNERS[suite](random.Random(seed), report)
    return report


__all__ = ["SUITES", "SuiteReport", "Failure", "run_suite"]
