import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab import corpus
from syzlab.decomp import (
    Certainty,
    IsoClassRegistry,
    Verdict,
    decompose,
    is_isomorphic,
    nakayama_indecomposables,
    register,
    support_components,
)
from syzlab.itfunc import SyzygyGraph, syzygy_orbit
from syzlab.quiver import projective
from syzlab.rep import Representation, direct_sum, power, simple

BASE = ["A2", "L2", "A3r"]


def test_prepared_sum(A2):
    d = decompose(power(projective(A2, "1"), 2))
    assert len(d) == 1
    (m, k), = list(d)
    assert k == 2 and is_isomorphic(m, projective(A2, "1"))
    assert d.certainty is Certainty.EXACT


def test_regular_loop_module_indecomposable(L2):
    assert decompose(projective(L2, "1")).is_indecomposable()


def test_zero_arrow_splits(A2):
    m = Representation(A2, {"1": 1, "2": 1}, {"a": [[0]]})
    d = decompose(m)
    found = sorted((tuple(x.dims.values()), k) for x, k in d)
    assert found == [((0, 1), 1), ((1, 0), 1)]
    assert len(support_components(m)) == 2


def test_iso_examples(A2):
    m = projective(A2, "1")
    r = is_isomorphic(m, m)
    assert r.verdict is Verdict.YES and r.witness.is_iso()
    assert is_isomorphic(simple(A2, "1"), simple(A2, "2")).verdict is Verdict.NO
    r = is_isomorphic(m, direct_sum(simple(A2, "1"), simple(A2, "2")))
    assert r.verdict is Verdict.NO


def test_registry(A2, L2):
    reg = IsoClassRegistry(A2)
    s = simple(A2, "1")
    assert register(reg, s).ident == register(reg, s).ident
    assert register(reg, simple(A2, "2")).ident != register(reg, s).ident
    graph = SyzygyGraph(L2)
    roots = [c for m in (simple(L2, "1"), projective(L2, "1")) for c in graph.classes_of(m)]
    syzygy_orbit(graph, roots)
    assert len(graph.registry) == 2


@pytest.mark.parametrize("name,count", [("A2", 3), ("L2", 2), ("A3r", 5)])
def test_nakayama_counts(name, count):
    inds = nakayama_indecomposables(corpus.algebra(name))
    assert len(inds) == count
    for i, x in enumerate(inds):
        assert decompose(x).is_indecomposable()
        for y in inds[i + 1:]:
            assert not is_isomorphic(x, y)


def _dimvec_total(d, alg):
    return {v: sum(m.dims[v] * k for m, k in d) for v in alg.vertices}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(BASE), st.data())
def test_decomposition_accounts_for_dimension(name, data):
    alg = corpus.algebra(name)
    mods = corpus.module_samples(alg)
    picks = data.draw(st.lists(st.sampled_from(mods), min_size=1, max_size=3))
    m = direct_sum(*picks)
    d = decompose(m)
    assert _dimvec_total(d, alg) == m.dims
    assert sum(k for _, k in d) == len(picks)
    assert d.recomposition().is_iso()


def test_non_nakayama_summands_indecomposable(T2A2):
    flat = [x.flat for x in T2A2.indecomposable_projectives()]
    d = decompose(direct_sum(*flat))
    assert sum(k for _, k in d) == len(flat)
