from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from heispoly import group as grp
from heispoly.errors import ValidationError
from heispoly.poly import Poly, Rat

from conftest import elements, rats

E = grp.GroupElement.make


def test_compose_example():
    out = grp.compose(E(1, [0, 0, 0]), E(0, [0, 0, 1]))
    assert out == E(1, ["1/6", 1, 1])
    assert grp.compose_matrices(E(1, [0, 0, 0]), E(0, [0, 0, 1])) == out
    assert grp.compose_n2_closed(E(1, [0, 0, 0]), E(0, [0, 0, 1])) == out


def test_identity_and_inverse_examples():
    g = E(1, [0, 0, 1])
    assert grp.identity(1) == E(0, [0, 0])
    assert grp.compose(grp.identity(2), g) == g
    assert grp.compose(g, grp.identity(2)) == g
    assert grp.inverse(g) == E(-1, [0, 0, -1])
    assert grp.compose(g, grp.inverse(g)) == grp.identity(2)
    assert grp.inverse(grp.identity(3)) == grp.identity(3)


def test_n1_closed_law_example():
    a0, a1, b0, b1, u, v = (Rat(k, 3) for k in (1, -2, 4, 5, -1, 7))
    expected = E(u + v, [a0 + b0 + u * b1 / 2 - v * a1 / 2, a1 + b1])
    assert grp.compose(E(u, [a0, a1]), E(v, [b0, b1])) == expected


def test_n2_closed_examples():
    g = E(1, [0, 0, 1])
    assert grp.compose_n2_closed(g, g) == E(2, [0, 0, 2]) == grp.compose(g, g)
    assert grp.compose_n2_closed(g, grp.identity(2)) == g


def test_sigma_examples():
    a, b = E(1, [0, 0, 0]), E(0, [0, 0, 1])
    assert grp.sigma(a, b) == Rat(1, 6) == grp.sigma_closed(a, b)
    g = E(Rat(2, 3), [0, 1, -1])
    assert grp.sigma(grp.identity(2), g) == 0 == grp.sigma_closed(grp.identity(2), g)
    assert grp.sigma_closed(E(0, [0, 1, 3]), E(0, [0, -2, 5])) == 0


def test_sigma_rejects_constant_terms():
    with pytest.raises(ValidationError):
        grp.sigma(E(0, [1, 0]), E(0, [0, 0]))
    with pytest.raises(ValidationError):
        grp.sigma_closed(E(0, [0, 0]), E(0, [2, 0]))


def test_bound_mismatch():
    with pytest.raises(ValidationError):
        grp.compose(grp.identity(1), grp.identity(2))
    with pytest.raises(ValidationError):
        grp.compose_n1_closed(grp.identity(2), grp.identity(2))
    with pytest.raises(ValidationError):
        grp.compose_n2_closed(grp.identity(1), grp.identity(1))


def test_embed_examples():
    assert grp.embed(E(1, [0, 1]), 3) == E(1, [0, 1, 0, 0])
    assert grp.embed(E(1, [0, 1]), 3).bound == 3
    assert grp.embed(grp.identity(1), 4) == grp.identity(4)
    with pytest.raises(ValidationError):
        grp.embed(grp.identity(3), 2)


@given(rats, rats, rats, rats)
def test_weyl_phase_at_degree_one(al, be, al2, be2):
    # sqrt2 enters the bilinear phase squared
    g1, g2 = E(-al, [0, be]), E(-al2, [0, be2])
    assert 2 * grp.sigma(g1, g2) == al2 * be - al * be2
    assert 2 * grp.sigma_closed(g1, g2) == al2 * be - al * be2


def test_weyl_phase_with_irrational_scaling():
    import math

    al, be, al2, be2 = 0.3, -1.1, 0.7, 0.4
    s = math.sqrt(2)
    g1 = grp.GroupElement.make(-s * al, [0, s * be])
    g2 = grp.GroupElement.make(-s * al2, [0, s * be2])
    assert float(grp.sigma(g1, g2)) == pytest.approx(al2 * be - al * be2, abs=1e-14)


@pytest.mark.parametrize("n", range(1, 7))
@given(data=st.data())
def test_group_axioms(n, data):
    a, b, c = (data.draw(elements(n)) for _ in range(3))
    assert (a @ b) @ c == a @ (b @ c)
    assert grp.compose(a, grp.inverse(a)) == grp.identity(n)
    assert grp.compose(grp.inverse(a), a) == grp.identity(n)


@pytest.mark.parametrize("n", range(1, 7))
@given(data=st.data())
def test_cocycle(n, data):
    a, b, c = (data.draw(elements(n, zero_constant=True)) for _ in range(3))
    assert grp.sigma_closed(a, b) == grp.sigma(a, b)
    assert ((a @ b) @ c).poly.coeffs[0] == (a @ (b @ c)).poly.coeffs[0]


@given(elements(1), elements(1), elements(2), elements(2))
def test_closed_laws(a1, b1, a2, b2):
    assert grp.compose_n1_closed(a1, b1) == grp.compose(a1, b1)
    assert grp.compose_n2_closed(a2, b2) == grp.compose(a2, b2)


@given(elements(3), elements(3))
def test_matrix_and_matrix_free_paths_agree(a, b):
    assert grp.compose_matrices(a, b) == grp.compose(a, b)


@given(elements(2), elements(2), st.integers(2, 6))
def test_embedding_is_a_homomorphism(a, b, m):
    assert grp.embed(a @ b, m) == grp.embed(a, m) @ grp.embed(b, m)


def test_composition_at_zero_total_momentum():
    a, b = E(Rat(5, 2), [1, 2, 3]), E(Rat(-5, 2), [0, 1, 1])
    assert (a @ b).u == 0
    assert grp.compose_n2_closed(a, b) == a @ b


@given(elements(4))
def test_json_round_trip(g):
    assert grp.GroupElement.from_json(g.to_json()) == g
    assert grp.GroupElement.from_json(g.to_json(), 4) == g


def test_json_errors():
    with pytest.raises(ValidationError):
        grp.GroupElement.from_json({"u": "1"})
    with pytest.raises(ValidationError):
        grp.GroupElement.from_json({"bound": 2, "u": "1", "coeffs": ["0", "0", "0"]}, 3)
    with pytest.raises(ValidationError):
        grp.GroupElement.from_json({"u": "x", "coeffs": ["0"]})
