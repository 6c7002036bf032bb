import pytest

from syzlab import corpus
from syzlab.decomp import is_isomorphic
from syzlab.itbuild import (
    NOT_FOUND,
    WITNESSED,
    ClassFamily,
    build_it_sequence,
    check_ts1,
    check_ts2,
    check_ts3,
    triangular_preset,
    strip_projective,
    ts1_witness,
    ts2_witness,
    verify_it_certificate,
)
from syzlab.quiver import projective
from syzlab.rep import (
    ShortExactSequence,
    cover,
    direct_sum,
    hom_space,
    identity,
    is_projective,
    morphism_direct_sum,
    simple,
    split_sequence,
    syzygy,
    zero_morphism,
    zero_rep,
)
from syzlab.triangular import TripleModule, canonical_ses, embed_bar, embed_under, it_module_construction

ZERO = ClassFamily("0", [])


def _tu_generators(alg):
    return [embed_bar(alg, a).flat for a in corpus.module_samples(alg.T)] + [
        embed_under(alg, b).flat for b in corpus.u_samples(alg)
    ]


def test_ts1_with_zero_c(T2L2):
    D = ClassFamily("D", _tu_generators(T2L2))
    hint = lambda y: canonical_ses(TripleModule(T2L2, y))
    for x in corpus.corpus_triples(T2L2)[:8]:
        y = syzygy(x.flat)
        seq, via = ts1_witness(y, ZERO, D, (hint,))
        if not D.contains(y):
            continue
        assert seq is not None and seq.is_exact()


def test_ts1_with_zero_d(A2):
    C = ClassFamily("C", corpus.indecomposables(A2))
    for r in check_ts1(corpus.indecomposables(A2), C, ZERO):
        assert r.verdict == WITNESSED and r.witness.right.is_zero()


def test_ts1_projective_samples(L2):
    fam = ClassFamily("S", [simple(L2, "1")])
    r, = check_ts1([projective(L2, "1")], fam, fam)
    assert r.verdict == WITNESSED and r.via == "trivial" and r.witness.middle.is_zero()


def test_ts2_covers(A3):
    D = ClassFamily("D", corpus.indecomposables(A3))
    E = ClassFamily("E", [cover(d)[0] for d in D.generators()])
    K = ClassFamily("K", [syzygy(d) for d in D.generators()])
    results = check_ts2(D, E, K)
    assert results and all(r.verdict == WITNESSED for r in results)


def test_ts2_vacuous_and_not_found(A2):
    E = ClassFamily("E", [projective(A2, "1")])
    assert check_ts2(ZERO, E, E) == []
    D = ClassFamily("D", [simple(A2, "1")])
    r, = check_ts2(D, ZERO, ZERO, hints=())
    assert r.verdict == NOT_FOUND
    seq, _ = ts2_witness(simple(A2, "1"), ZERO, ZERO)
    assert seq is None


def test_ts3(A2, L2):
    proj = ClassFamily("P", [projective(A2, v) for v in A2.vertices])
    everything = ClassFamily("all", corpus.indecomposables(A2))
    for j in (1, 2, 3):
        assert check_ts3(proj, everything, j).passed
    assert check_ts3(everything, everything, 2).passed
    S = ClassFamily("S", [simple(L2, "1")])
    r = check_ts3(S, S, 1)
    assert not r.passed and list(r.table.values()) == [1]
    with pytest.raises(ValueError):
        check_ts3(S, S, 0)


@pytest.mark.parametrize("name", ["T2(L2)", "T2(A2)"])
def test_triangular_preset_sequences(name):
    alg = corpus.algebra(name)
    sc = triangular_preset(alg)
    out = sc.run(corpus.corpus_triples(alg)[:10])
    assert all(r.verdict == WITNESSED for r in out["ts2"])
    assert out["ts3"].passed
    built = [s for _, s in out["sequences"]]
    assert built and all(s is not None and s.ok for s in built)


def test_projective_sample_gives_zero_terms(T2L2):
    sc = triangular_preset(T2L2)
    P = T2L2.indecomposable_projectives()[0]
    (_, s), = sc.run([P])["sequences"]
    assert s.sequence.left.is_zero() and s.sequence.right.is_zero()
    assert all(is_projective(m) for m in [s.sequence.middle] if not s.sequence.middle.is_zero())


def test_degenerate_sequence(T2L2):
    # ΩX in add C: the D-part vanishes and so does K
    sc = triangular_preset(T2L2)
    x = embed_under(T2L2, simple(T2L2.U, "1")).flat
    y = syzygy(x)
    ts1, _ = ts1_witness(y, sc.C, sc.D, sc.ts1_hints)
    assert ts1.right.is_zero()
    ts2, _ = ts2_witness(ts1.right, sc.E, sc.K)
    s = build_it_sequence(x, ts1, ts2, 1, 2)
    assert s.ok and s.sequence.left.is_zero()


def test_strip_projective_unchanged(A2):
    seq = split_sequence(simple(A2, "2"), simple(A2, "1"))
    assert strip_projective(seq) is seq


def test_strip_projective_example(A2):
    s1, s2 = simple(A2, "1"), simple(A2, "2")
    p1, p2 = projective(A2, "1"), projective(A2, "2")
    z = zero_rep(A2)
    _, pi = cover(s1)
    inc, = hom_space(s2, p1)
    mid = direct_sum(p1, p2)
    mono = morphism_direct_sum([inc, zero_morphism(z, p2)], s2, mid)
    epi = morphism_direct_sum([pi, identity(p2)], mid)
    seq = ShortExactSequence(mono, epi)
    assert seq.is_exact()
    out = strip_projective(seq)
    assert out.is_exact()
    assert is_isomorphic(out.left, s2) and is_isomorphic(out.middle, p1) and is_isomorphic(out.right, s1)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_certificate_representation_finite(A3, n):
    V = direct_sum(*corpus.indecomposables(A3))
    assert verify_it_certificate(V, corpus.corpus_modules(A3), n).ok


def test_certificate_regular_module(A2):
    V = direct_sum(*[projective(A2, v) for v in A2.vertices])
    cert = verify_it_certificate(V, corpus.indecomposables(A2), 1)
    assert cert.ok
    assert all(w.sequence.left.is_zero() for w in cert.witnesses)


def test_certificate_failure_reported(L2):
    cert = verify_it_certificate(projective(L2, "1"), [simple(L2, "1")], 1)
    assert not cert.ok and cert.counterexample == "S(1)"


def test_certificate_triangular(T2L2, L2):
    V = direct_sum(*corpus.indecomposables(L2))
    assert verify_it_certificate(V, corpus.indecomposables(L2), 0).ok
    C = it_module_construction(V, V, T2L2)
    assert verify_it_certificate(C, corpus.corpus_triples(T2L2), 0).ok
