import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzlab import corpus
from syzlab.itfunc import (
    Status,
    SyzygyGraph,
    Verdict,
    phi,
    phi_dim_bound,
    projective_dimension,
    psi,
    syzygy_finiteness_search,
)
from syzlab.quiver import projective
from syzlab.rep import direct_sum, pd, simple

BASE = ["A2", "L2", "A3r"]


def test_phi_psi_examples(A2, L2):
    for alg in (A2, L2):
        for v in alg.vertices:
            assert phi(projective(alg, v)).phi == 0
            assert psi(projective(alg, v)).psi == 0
    ss = direct_sum(simple(A2, "1"), simple(A2, "2"))
    assert phi(ss).phi == 1 and psi(ss).psi == 1
    s = simple(L2, "1")
    assert phi(s).phi == 0 and psi(s).psi == 0


def test_depth_cap_zero_is_undecided(L2):
    r = phi(simple(L2, "1"), depth_cap=0)
    assert r.status is Status.UNDECIDED and not r.decided


def test_projective_dimension(A2, L2):
    assert projective_dimension(simple(A2, "1")) == 1
    assert projective_dimension(simple(L2, "1")) is None


def test_finiteness_examples(A2, L2):
    r = syzygy_finiteness_search([simple(L2, "1"), projective(L2, "1")])
    assert r.verdict is Verdict.CONFIRMED and r.level == 0
    assert r.representative.dims == {"1": 3}
    r = syzygy_finiteness_search(corpus.indecomposables(A2))
    assert r.verdict is Verdict.CONFIRMED and r.level == 0 and len(r.classes) == 3
    assert syzygy_finiteness_search([simple(L2, "1")], depth_cap=0).verdict is Verdict.UNDECIDED


def test_bound_examples(A2, L2):
    fam = [simple(L2, "1"), projective(L2, "1")]
    assert phi_dim_bound(L2, fam, 0, fam).holds
    inds = corpus.indecomposables(A2)
    assert phi_dim_bound(A2, inds, 0, inds).holds
    r = phi_dim_bound(A2, inds, 0, [])
    assert r.holds and r.rows == []


@pytest.mark.parametrize("name", BASE)
def test_finite_pd_gives_pd(name):
    alg = corpus.algebra(name)
    graph = SyzygyGraph(alg)
    for m in corpus.corpus_modules(alg):
        d = pd(m)
        if d.finite:
            assert phi(m, graph=graph).phi == d.value
            assert psi(m, graph=graph).psi == d.value


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(BASE), st.data())
def test_add_monotone_and_phi_below_psi(name, data):
    alg = corpus.algebra(name)
    mods = corpus.module_samples(alg)
    x = data.draw(st.sampled_from(mods))
    y = data.draw(st.sampled_from(mods))
    graph = SyzygyGraph(alg)
    big = direct_sum(x, y)
    rx, rb = phi(x, graph=graph), phi(big, graph=graph)
    assert rx.phi <= rb.phi
    assert rb.phi <= psi(big, graph=graph).psi
    assert psi(x, graph=graph).psi <= psi(big, graph=graph).psi
    # multiplicities do not matter
    assert phi(direct_sum(x, x), graph=graph).phi == rx.phi


def test_phi_of_omega(A3):
    # Φ(M) <= Φ(ΩM) + 1
    from syzlab.rep import syzygy

    graph = SyzygyGraph(A3)
    for m in corpus.corpus_modules(A3):
        assert phi(m, graph=graph).phi <= phi(syzygy(m), graph=graph).phi + 1
