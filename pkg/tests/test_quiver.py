import pytest

from syzlab import corpus
from syzlab.quiver import (
    NotAdmissible,
    Quiver,
    algebra_from_json,
    build_algebra,
    free_loop_quiver,
    is_nakayama,
    linear_tensor,
    opposite,
    projective,
)

BASE = ["A2", "L2", "A3r"]


def test_a2_basis(A2):
    assert [b.arrows for b in A2.basis] == [(), ("a",), ()]
    assert A2.total_dimension == 3


def test_loop_basis(L2):
    assert L2.total_dimension == 2
    assert [b.arrows for b in L2.basis] == [(), ("a",)]


def test_free_loop_not_admissible():
    with pytest.raises(NotAdmissible):
        build_algebra(free_loop_quiver())


def test_projectives_a2(A2):
    p1 = projective(A2, "1")
    assert p1.dims == {"1": 1, "2": 1} and p1.maps["a"].tolist() == [[1]]
    assert projective(A2, "2").dims == {"1": 0, "2": 1}


def test_projective_loop(L2):
    p = projective(L2, "1")
    assert p.dims == {"1": 2}
    assert p.maps["a"].tolist() == [[0, 0], [1, 0]]


def test_opposite():
    a2 = corpus.algebra("A2")
    op = opposite(a2)
    assert [(a.src, a.tgt) for a in op.quiver.arrows] == [("2", "1")]
    l2 = corpus.algebra("L2")
    assert opposite(l2).quiver == l2.quiver
    assert opposite(l2).total_dimension == l2.total_dimension


@pytest.mark.parametrize("name", BASE)
def test_opposite_involution(name):
    alg = corpus.algebra(name)
    back = opposite(opposite(alg))
    assert back.quiver == alg.quiver and back.basis == alg.basis


@pytest.mark.parametrize("name", BASE)
def test_projective_dimensions_sum(name):
    alg = corpus.algebra(name)
    total = sum(sum(projective(alg, v).dims.values()) for v in alg.vertices)
    assert total == alg.total_dimension


@pytest.mark.parametrize("name", BASE)
def test_json_round_trip(name):
    alg = corpus.algebra(name)
    back = algebra_from_json(alg.to_json())
    assert back.basis == alg.basis and back.char == alg.char


def test_a3_radical_square_zero(A3):
    assert A3.total_dimension == 5
    assert all(b.length <= 1 for b in A3.basis)


def test_nakayama_flags(A2, L2, A3):
    assert is_nakayama(A2) and is_nakayama(L2) and is_nakayama(A3)
    star = build_algebra(Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "1", "3"))))
    assert not is_nakayama(star)


def test_linear_tensor_dimension(L2):
    # the k-vertex linear quiver tensor Γ has dimension binom(k+1, 2) · dim Γ
    assert linear_tensor(L2, 2).total_dimension == 3 * L2.total_dimension
