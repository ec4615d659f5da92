from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from heispoly import operators as ops
from heispoly.errors import ValidationError
from heispoly.poly import Poly, Rat, primitive, shift

from conftest import nonzero_rats, polys, rats

w = Rat(3, 5)


def rows(*rs):
    return ops.TriMatrix.from_rows(rs)


def test_s_matrix_examples():
    assert ops.s_matrix(1, 2) == rows([1, 1, 1], [0, 1, 2], [0, 0, 1])
    assert ops.s_matrix(0, 3) == ops.identity(3)
    assert ops.apply(ops.s_matrix(1, 2), Poly.monomial(2, 2)) == Poly.from_coeffs([1, 2, 1])


def test_t_matrix_examples():
    assert ops.t_matrix(w, 2) == rows([1, w / 2, w * w / 3], [0, 1, w], [0, 0, 1])
    assert ops.t_matrix(0, 5) == ops.identity(5)
    assert ops.t_matrix(w, 1) == rows([1, w / 2], [0, 1])
    assert ops.apply(ops.t_matrix(1, 2), Poly.monomial(2, 2)) == Poly.from_coeffs(["1/3", 1, 1])


def test_t_inverse_examples():
    assert ops.t_inverse(w, 2) == rows([1, -w / 2, w * w / 6], [0, 1, -w], [0, 0, 1])
    assert ops.t_inverse(w, 1) == rows([1, -w / 2], [0, 1])
    for n in range(5):
        assert ops.t_inverse(0, n) == ops.identity(n)


def test_power_examples():
    single = ops.t_power_closed(1, 2, 2)
    assert single == rows([0, 0, Rat(1, 2)], [0, 0, 0], [0, 0, 0])
    for n in range(1, 6):
        assert ops.t_power_closed(w, n + 1, n).is_zero()
        assert ops.t_power_closed(w, 1, n) == ops.strict_part(w, n)
    with pytest.raises(ValidationError):
        ops.t_power_closed(w, 0, 3)


def test_apply_examples_and_errors():
    p = Poly.from_coeffs([1, 2, 3])
    assert ops.apply(ops.identity(2), p) == p
    with pytest.raises(ValidationError):
        ops.apply(ops.identity(3), p)
    with pytest.raises(ValidationError):
        ops.identity(2) @ ops.identity(3)


def test_all_matrices_upper_triangular():
    for n in range(1, 7):
        for m in (ops.t_matrix(w, n), ops.s_matrix(w, n), ops.t_inverse(w, n), ops.d_matrix(n)):
            assert m.is_upper_triangular()


def test_matrix_json_round_trip():
    m = ops.t_inverse(w, 3)
    assert ops.TriMatrix.from_json(m.to_json()) == m
    with pytest.raises(ValidationError):
        ops.TriMatrix.from_json({"bound": 2, "rows": [[1, 0], [0, 1]]})


def test_product_identity_needs_a_derivative():
    # without D on the left the diagonals are 1 versus 0
    u, v, n = Rat(1, 2), Rat(-2, 3), 3
    rhs = (1 / v + 1 / u) * ops.t_matrix(u + v, n) - (1 / u) * ops.t_matrix(v, n) - (1 / v) * ops.t_matrix(u, n)
    lhs = ops.t_matrix(u, n) @ ops.t_matrix(v, n)
    assert lhs != rhs
    assert set(rhs.diagonal()) == {0}
    assert ops.d_matrix(n) @ lhs == rhs


@given(st.integers(1, 8), rats, rats, rats)
def test_commutation_identities(n, u, v, x):
    tu, tv, tx = ops.t_matrix(u, n), ops.t_matrix(v, n), ops.t_matrix(x, n)
    su = ops.s_matrix(u, n)
    assert tx @ su == su @ tx
    assert tx @ tu == tu @ tx
    assert tu @ ops.s_matrix(-u, n) == ops.t_matrix(-u, n)
    assert su @ ops.s_matrix(v, n) == ops.s_matrix(u + v, n)
    assert su @ ops.s_matrix(-u, n) == ops.identity(n)


@given(st.integers(1, 8), nonzero_rats, nonzero_rats)
def test_averaging_identities(n, u, v):
    tu, tv = ops.t_matrix(u, n), ops.t_matrix(v, n)
    assert tu @ ops.s_matrix(v, n) == (1 + v / u) * ops.t_matrix(u + v, n) - (v / u) * tv
    rhs = (1 / v + 1 / u) * ops.t_matrix(u + v, n) - (1 / u) * tv - (1 / v) * tu
    assert ops.d_matrix(n) @ (tu @ tv) == rhs


@given(st.integers(1, 8), rats)
def test_closed_powers_and_inverse(n, x):
    nil = ops.strict_part(x, n)
    acc = nil
    for k in range(1, n + 2):
        assert ops.t_power_closed(x, k, n) == acc
        acc = acc @ nil
    assert ops.t_inverse(x, n) @ ops.t_matrix(x, n) == ops.identity(n)
    assert set(ops.t_inverse(x, n).diagonal()) == {1}


@given(polys(5), nonzero_rats, rats)
def test_primitive_choice_is_irrelevant(p, x, c):
    big = primitive(p) + Poly.from_coeffs([c], p.bound + 1)
    averaged = (shift(big, x) - big) * (1 / x)
    assert averaged == ops.apply(ops.t_matrix(x, p.bound), p)


@given(polys(6), rats)
def test_matrix_free_paths(p, x):
    n = p.bound
    assert list(ops.t_apply(x, p.coeffs)) == list(ops.apply(ops.t_matrix(x, n), p).coeffs)
    assert list(ops.s_apply(x, p.coeffs)) == list(ops.apply(ops.s_matrix(x, n), p).coeffs)
    assert list(ops.t_solve(x, p.coeffs)) == list(ops.apply(ops.t_inverse(x, n), p).coeffs)
