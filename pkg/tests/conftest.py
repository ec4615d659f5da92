from __future__ import annotations

from fractions import Fraction

from hypothesis import settings, strategies as st

from heispoly.group import GroupElement
from heispoly.poly import Poly, Rat

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rats = st.fractions(min_value=-6, max_value=6, max_denominator=7).map(
    lambda f: Rat(f.numerator, f.denominator)
)
nonzero_rats = rats.filter(bool)


def polys(bound: int, zero_constant: bool = False):
    coeffs = st.lists(rats, min_size=bound + 1, max_size=bound + 1)
    if zero_constant:
        coeffs = coeffs.map(lambda cs: [Rat(0), *cs[1:]])
    return coeffs.map(lambda cs: Poly(bound, tuple(cs)))


def elements(bound: int, zero_constant: bool = False):
    return st.builds(GroupElement, rats, polys(bound, zero_constant))


def frac(x: Rat) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))
