import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab import corpus
from syzlab.decomp import is_isomorphic
from syzlab.quiver import projective
from syzlab.rep import (
    Representation,
    RepresentationError,
    cokernel,
    cover,
    direct_sum,
    ext_dim,
    hom_dim,
    identity,
    is_projective,
    kernel,
    minimal_resolution,
    pd,
    pullback,
    radical,
    simple,
    syzygy,
    top,
    zero_morphism,
    zero_rep,
)

BASE = ["A2", "L2", "A3r"]


def test_relations_are_enforced(L2):
    with pytest.raises(RepresentationError):
        Representation(L2, {"1": 2}, {"a": [[0, 1], [1, 0]]})


def test_hom_examples(A2, L2):
    assert hom_dim(simple(A2, "1"), simple(A2, "2")) == 0
    assert hom_dim(simple(L2, "1"), simple(L2, "1")) == 1
    assert hom_dim(simple(A2, "2"), simple(A2, "2")) == 1


@pytest.mark.parametrize("name", BASE)
def test_yoneda(name):
    alg = corpus.algebra(name)
    for n in corpus.corpus_modules(alg):
        for v in alg.vertices:
            assert hom_dim(projective(alg, v), n) == n.dims[v]


def test_kernel_cokernel(A2):
    p1 = projective(A2, "1")
    k, _ = kernel(identity(p1))
    assert k.is_zero()
    _, epi = cover(simple(A2, "1"))
    k, _ = kernel(epi)
    assert is_isomorphic(k, simple(A2, "2"))
    c, _ = cokernel(zero_morphism(zero_rep(A2), p1))
    assert is_isomorphic(c, p1)


def test_radical_and_top(A2):
    assert radical(direct_sum(simple(A2, "1"), simple(A2, "2")))[0].is_zero()
    assert is_isomorphic(radical(projective(A2, "1"))[0], simple(A2, "2"))


@pytest.mark.parametrize("name", BASE)
def test_top_of_projective(name):
    alg = corpus.algebra(name)
    for v in alg.vertices:
        assert is_isomorphic(top(projective(alg, v))[0], simple(alg, v))


def test_covers(A2, L2):
    p1 = projective(A2, "1")
    P, epi = cover(p1)
    assert is_isomorphic(P, p1) and epi.is_iso()
    P, _ = cover(simple(L2, "1"))
    assert P.dims == {"1": 2} and is_isomorphic(P, projective(L2, "1"))
    P, _ = cover(simple(A2, "1"))
    assert is_isomorphic(P, p1)


def test_syzygy_examples(A2, L2):
    assert syzygy(projective(L2, "1")).is_zero()
    assert is_isomorphic(syzygy(simple(A2, "1")), simple(A2, "2"))
    assert is_isomorphic(syzygy(simple(L2, "1")), simple(L2, "1"))


def test_pd_examples(A2, L2):
    assert pd(projective(A2, "1")).value == 0
    assert pd(simple(A2, "1")).value == 1
    for cap in (1, 3, 8):
        r = pd(simple(L2, "1"), cap=cap)
        assert not r.finite


def test_ext_examples(A2, L2):
    for j in (1, 2):
        assert ext_dim(projective(A2, "1"), simple(A2, "2"), j) == 0
    assert ext_dim(simple(L2, "1"), simple(L2, "1"), 1) == 1
    assert ext_dim(simple(A2, "1"), simple(A2, "2"), 1) == 1


@pytest.mark.parametrize("name", BASE)
def test_ext0_is_hom(name):
    alg = corpus.algebra(name)
    mods = corpus.module_samples(alg)
    for m in mods:
        for n in mods:
            assert ext_dim(m, n, 0) == hom_dim(m, n)


def test_pullback_examples(A2):
    s1 = simple(A2, "1")
    _, epi = cover(s1)
    pb, p1, p2 = pullback(epi, epi)
    assert pb.dims == {"1": 1, "2": 2} and p1.is_epi() and p2.is_epi()
    pb, _, _ = pullback(identity(s1), identity(s1))
    assert is_isomorphic(pb, s1)
    x, y = projective(A2, "1"), simple(A2, "2")
    z = zero_rep(A2)
    pb, _, _ = pullback(zero_morphism(x, z), zero_morphism(y, z))
    assert is_isomorphic(pb, direct_sum(x, y))


@pytest.mark.parametrize("name", BASE)
def test_resolution_is_exact(name):
    alg = corpus.algebra(name)
    for m in corpus.module_samples(alg):
        res = minimal_resolution(m, 3)
        assert all(is_projective(res.projective(k)) for k in range(4))
        assert (res.covers[0] @ res.differential(1)).is_zero()
        for k in (1, 2):
            assert (res.differential(k) @ res.differential(k + 1)).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(BASE), st.data())
def test_syzygy_dimension_count(name, data):
    alg = corpus.algebra(name)
    m = data.draw(st.sampled_from(corpus.corpus_modules(alg)))
    P, _ = cover(m)
    om = syzygy(m)
    assert all(P.dims[v] == om.dims[v] + m.dims[v] for v in alg.vertices)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(BASE), st.data())
def test_hom_additive(name, data):
    alg = corpus.algebra(name)
    mods = corpus.module_samples(alg)
    x, y, z = (data.draw(st.sampled_from(mods)) for _ in range(3))
    assert hom_dim(direct_sum(x, y), z) == hom_dim(x, z) + hom_dim(y, z)
    assert np.array_equal(
        np.array([direct_sum(x, y).dims[v] for v in alg.vertices]),
        np.array([x.dims[v] + y.dims[v] for v in alg.vertices]),
    )
