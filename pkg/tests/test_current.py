from __future__ import annotations

import random

import pytest

from heispoly import current as cur
from heispoly import verify
from heispoly.errors import ValidationError
from heispoly.poly import Rat

SF = cur.StepFunction
ind = SF.indicator


def test_canonical_form():
    f = SF((0, 1, 2, 3), (1, 1, 0))
    assert f.breaks == (0, 2) and f.values == (1,)
    assert SF((0, 1, 2), (0, 0)) == SF()
    assert SF((0, 1, 2, 3), (0, 5, 0)) == ind(1, 2, 5)
    with pytest.raises(ValidationError):
        SF((0, 0, 1), (1, 1))
    with pytest.raises(ValidationError):
        SF((0, 1), (1, 2))


def test_evaluation_is_right_open():
    f = ind(0, 1, 3)
    assert f(0) == 3 and f(Rat(1, 2)) == 3 and f(1) == 0 and f(-1) == 0


def test_refine_examples():
    assert cur.refine(ind(0, 2), ind(1, 3)) == (0, 1, 2, 3)
    f = SF((0, 1, 3), (1, 2))
    assert cur.refine(f, f) == f.breaks
    assert cur.refine(ind(0, 1), ind(2, 3)) == (0, 1, 2, 3)


def test_inner_examples():
    assert cur.inner(ind(0, 2), ind(1, 3)) == 1
    assert cur.inner(ind(0, 2), SF()) == 0
    assert cur.inner(ind(0, Rat(1, 2), 2), ind(0, Rat(1, 2), 3)) == 3


def test_pointwise_algebra():
    f, g = ind(0, 2, 3), ind(1, 3, -1)
    assert (f + g)(Rat(3, 2)) == 2
    assert (f * g) == ind(1, 2, -3)
    assert (f - f) == SF()
    assert 2 * f == ind(0, 2, 6) and -f == ind(0, 2, -3)


def unit_cell_pair():
    e1 = cur.CurrentElement(2, 0, ind(0, 1), (SF(), SF()))
    e2 = cur.CurrentElement(2, 0, SF(), (SF(), ind(0, 1)))
    return e1, e2


def test_unit_cell_example():
    e1, e2 = unit_cell_pair()
    for out in (cur.current_compose(e1, e2), cur.galilei_compose_closed(e1, e2)):
        assert out.central == Rat(1, 6)
        assert out.fs == (ind(0, 1), ind(0, 1))
        assert out.g == ind(0, 1)


def test_neutral_and_disjoint():
    e1, _ = unit_cell_pair()
    assert cur.current_compose(e1, cur.CurrentElement.neutral(2)) == e1
    assert cur.galilei_compose_closed(e1, cur.CurrentElement.neutral(2)) == e1
    a = cur.CurrentElement(2, Rat(1, 3), ind(0, 1, 2), (ind(0, 1, 5), SF()))
    b = cur.CurrentElement(2, Rat(1, 4), ind(3, 4, -1), (SF(), ind(3, 4, 7)))
    out = cur.current_compose(a, b)
    assert out.central == Rat(7, 12)
    assert out.g == a.g + b.g and out.fs == (a.fs[0], b.fs[1])


def test_self_composition_has_no_central_gain():
    e = cur.CurrentElement(2, 0, SF((0, 1, 2), (1, -2)), (ind(0, 2, 3), SF((0, 1, 2), (1, 4))))
    assert cur.galilei_compose_closed(e, e).central == 0
    assert cur.current_compose(e, e).central == 0


def test_weyl_phase_examples():
    f = (ind(0, 1), ind(0, 1))
    h = (ind(0, 1), ind(0, 1, -1))
    assert cur.weyl_phase(f, h) == 2
    assert cur.weyl_phase(f, f) == 0
    assert cur.weyl_phase(f, (ind(2, 3), ind(2, 3))) == 0
    composed = cur.current_compose(cur.weyl_element(f), cur.weyl_element(h))
    assert 2 * composed.central == 2


def test_validation():
    with pytest.raises(ValidationError):
        cur.CurrentElement(2, 0, SF(), (SF(),))
    with pytest.raises(ValidationError):
        cur.CurrentElement(0, 0, SF(), ())
    with pytest.raises(ValidationError):
        cur.current_compose(cur.CurrentElement.neutral(1), cur.CurrentElement.neutral(2))
    with pytest.raises(ValidationError):
        cur.galilei_compose_closed(cur.CurrentElement.neutral(1), cur.CurrentElement.neutral(1))


def test_json_round_trip():
    rng = random.Random(5)
    for n in range(1, 5):
        e = verify.random_current(rng, n)
        assert cur.CurrentElement.from_json(e.to_json()) == e
        assert cur.CurrentElement.from_json(e.to_json(), n) == e
    with pytest.raises(ValidationError):
        cur.CurrentElement.from_json(e.to_json(), 2)


@pytest.mark.parametrize("seed", range(4))
def test_random_identities(seed):
    rng = random.Random(seed)
    for n in range(1, 5):
        for name, ok, payload in verify.current_checks(rng, n):
            assert ok, (name, payload())
    for name, ok, payload in verify.chain_checks(verify.galilei_checks(rng), verify.weyl_phase_checks(rng)):
        assert ok, (name, payload())


def test_cellwise_equivalence_up_to_degree_six():
    rng = random.Random(11)
    for n in range(1, 7):
        checks = {name: ok for name, ok, _ in verify.current_checks(rng, n)}
        assert checks["cellwise-discrete equivalence"]
