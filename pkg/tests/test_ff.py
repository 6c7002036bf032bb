import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab import ff
from syzlab.ff import FpMatrix


def matrices(p=5, max_side=5):
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rref_identity():
    r, k, piv = ff.rref(ff.eye(3), 5)
    assert (r == ff.eye(3)).all() and k == 3 and piv == [0, 1, 2]


def test_rref_all_ones_gf2():
    _, k, piv = ff.rref(np.array([[1, 1], [1, 1]]), 2)
    assert k == 1 and piv == [0]


def test_rref_zero():
    _, k, piv = ff.rref(ff.zeros(2, 4), 5)
    assert k == 0 and piv == []


def test_nullspace_examples():
    assert ff.nullspace(ff.eye(3), 5).shape == (3, 0)
    k = ff.nullspace(np.array([[1, 1]]), 2)
    assert k.shape == (2, 1) and list(k[:, 0]) == [1, 1]
    assert ff.rank(ff.nullspace(ff.zeros(2, 3), 5), 5) == 3


def test_solve_examples():
    b = np.array([[3], [1], [4]])
    assert (ff.solve(ff.eye(3), b, 5) == b).all()
    assert ff.solve(np.array([[1, 1], [1, 1]]), np.array([[1], [0]]), 2) is None
    # exhaustive oracle for the GF(2) case
    m = np.array([[1, 1], [1, 1]])
    assert not any(((m @ np.array(x)) % 2 == [1, 0]).all() for x in itertools.product(range(2), repeat=2))
    x = ff.solve(ff.zeros(2, 2), ff.zeros(2, 1), 5)
    assert x is not None and not x.any()


def test_kronecker_and_direct_sum():
    a = FpMatrix.from_rows([[1, 2], [3, 4]], 5)
    assert a.kronecker(FpMatrix.identity(1, 5)) == a
    s = ff.direct_sum(FpMatrix.from_rows([[2]], 5), FpMatrix.from_rows([[3]], 5))
    assert s == FpMatrix.from_rows([[2, 0], [0, 3]], 5)
    k = ff.kronecker(FpMatrix.from_rows([[1, 1]], 2), FpMatrix.from_rows([[1], [1]], 2))
    assert k == FpMatrix.from_rows([[1, 1], [1, 1]], 2)


def test_rank_examples():
    assert ff.rank(ff.eye(4), 5) == 4
    assert ff.rank(np.array([[2, 4], [1, 2]]), 5) == 1
    assert ff.rank(ff.zeros(3, 3), 5) == 0


def test_integer_and_rational_rank_agree():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert ff.int_rank(m) == ff.rational_rank(m) == 2


def test_check_char_rejects_composite():
    import pytest

    with pytest.raises(ValueError):
        ff.check_char(4)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_transpose_and_nullity(rows):
    m = np.array(rows, dtype=np.int64)
    r = ff.rank(m, 5)
    assert r == ff.rank(m.T, 5)
    assert m.shape[1] == r + ff.nullspace(m, 5).shape[1]
    k = ff.nullspace(m, 5)
    assert not ff.mul(m, k, 5).any()


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_solve_contract(rows, bvals):
    m = np.array(rows, dtype=np.int64)
    b = np.array(bvals[: m.shape[0]], dtype=np.int64).reshape(-1, 1)
    x = ff.solve(m, b, 5)
    if x is None:
        assert ff.rank(np.hstack([m, b]), 5) == ff.rank(m, 5) + 1
    else:
        assert (ff.mul(m, x, 5) == b % 5).all()
