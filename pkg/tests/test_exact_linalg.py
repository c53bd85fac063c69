import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realkn.exact_linalg import (
    DimensionMismatch,
    IntegerOverflow,
    IntMatrix,
    NoSolution,
    NotUnimodular,
    determinant,
    gf2_solve,
    integer_nullspace,
    mat_mul,
    mat_pow,
    unimodular_inverse,
    vec_mat,
)

from conftest import unimodular

T1 = IntMatrix.of([[1, 0], [1, 1]])
T2 = IntMatrix.of([[2, -1], [1, 0]])
T3 = IntMatrix.of([[1, -1], [0, 1]])
I2 = IntMatrix.identity(2)


def adjugate_2x2(m):
    (a, b), (c, d) = m
    det = a * d - b * c
    return [[d * det, -b * det], [-c * det, a * det]]  # det = +-1 so 1/det = det


def test_identity_product():
    assert I2 @ T1 == T1


def test_t1_t3_product_against_numpy():
    expected = (np.array([[1, 0], [1, 1]]) @ np.array([[1, -1], [0, 1]])).tolist()
    assert expected == [[1, -1], [1, 0]]
    assert mat_mul(T1, T3).tolist() == expected


def test_order_six_composite():
    c = mat_mul(T1, T3)
    acc = np.eye(2, dtype=int)
    for _ in range(12):
        acc = acc @ np.array(c.tolist())
    assert acc.tolist() == [[1, 0], [0, 1]]
    assert mat_pow(c, 12) == I2
    assert mat_pow(c, 6) == I2
    assert mat_pow(c, 3) != I2


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul(T1, IntMatrix.identity(3))


def test_overflow_is_an_error():
    big = IntMatrix.of([[2**40, 0], [0, 1]])
    with pytest.raises(IntegerOverflow):
        mat_mul(big, big)
    with pytest.raises(IntegerOverflow):
        IntMatrix.of([[2**63]])


@pytest.mark.parametrize("m", [I2, T1, T2, T3])
def test_inverse_matches_adjugate(m):
    assert unimodular_inverse(m).tolist() == adjugate_2x2(m.tolist())


def test_inverse_examples():
    assert unimodular_inverse(I2) == I2
    assert unimodular_inverse(T1).tolist() == [[1, 0], [-1, 1]]
    assert unimodular_inverse(T2).tolist() == [[0, 1], [-1, 2]]


def test_not_unimodular():
    with pytest.raises(NotUnimodular):
        unimodular_inverse(IntMatrix.of([[2, 0], [0, 1]]))


def test_vec_mat_is_row_action():
    assert vec_mat((0, 1), T1) == (1, 1)
    assert vec_mat((1, 0), T3) == (1, -1)


@given(unimodular())
@settings(max_examples=150)
def test_inverse_property(a):
    assert mat_mul(a, unimodular_inverse(a)) == IntMatrix.identity(a.rows)
    assert mat_mul(unimodular_inverse(a), a) == IntMatrix.identity(a.rows)


@given(st.integers(2, 3), st.data())
@settings(max_examples=150)
def test_det_multiplicative(n, data):
    entries = st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
    a = IntMatrix.of(data.draw(entries))
    b = IntMatrix.of(data.draw(entries))
    assert determinant(mat_mul(a, b)) == determinant(a) * determinant(b)
    assert determinant(a) == round(np.linalg.det(np.array(a.tolist(), dtype=float)))


def test_integer_nullspace():
    (v,) = integer_nullspace([[1, 0, -1, 0], [0, 1, 0, -1], [1, -1, 0, 0]], 4)
    assert v in ((1, 1, 1, 1), (-1, -1, -1, -1))


# --- GF(2) -------------------------------------------------------------------


def enumerate_solutions(a, b):
    a = np.asarray(a) % 2
    cols = a.shape[1]
    return [
        x for x in itertools.product((0, 1), repeat=cols)
        if np.array_equal(a @ np.array(x) % 2, np.asarray(b) % 2)
    ]


def span(basis, cols):
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        v = np.zeros(cols, dtype=int)
        for c, b in zip(coeffs, basis):
            v = (v + c * np.array(b)) % 2
        out.add(tuple(int(x) for x in v))
    return out


def test_gf2_zero_system():
    sol = gf2_solve(np.zeros((2, 2)), [0, 0])
    assert sol.solution == (0, 0)
    assert sorted(sol.nullspace_basis) == [(0, 1), (1, 0)]


def test_gf2_identity():
    sol = gf2_solve(np.eye(2), [1, 0])
    assert sol.solution == (1, 0)
    assert sol.nullspace_basis == ()


def test_gf2_rank_one():
    a = [[1, 1], [0, 0]]
    sol = gf2_solve(a, [1, 0])
    assert sum(sol.solution) % 2 == 1
    assert sol.nullspace_basis == ((1, 1),)
    assert set(enumerate_solutions(a, [1, 0])) == {(1, 0), (0, 1)}


def test_gf2_inconsistent():
    with pytest.raises(NoSolution):
        gf2_solve([[1, 1], [1, 1]], [1, 0])


def test_gf2_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        gf2_solve(np.eye(2), [1, 0, 1])


@given(st.integers(1, 4), st.integers(1, 5), st.data())
@settings(max_examples=200)
def test_gf2_solve_against_enumeration(rows, cols, data):
    a = np.array(data.draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols), min_size=rows, max_size=rows)))
    b = data.draw(st.lists(st.integers(0, 1), min_size=rows, max_size=rows))
    brute = enumerate_solutions(a, b)
    if not brute:
        with pytest.raises(NoSolution):
            gf2_solve(a, b)
        return
    sol = gf2_solve(a, b)
    assert sol.solution in brute
    kernel = enumerate_solutions(a, [0] * rows)
    assert span(sol.nullspace_basis, cols) == set(kernel)
    assert len(sol.nullspace_basis) == int(np.log2(len(kernel)))
