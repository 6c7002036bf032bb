import pytest

from syzlab import corpus, pex
from syzlab.decomp import is_isomorphic
from syzlab.quiver import projective
from syzlab.rep import cover, cover_sequence, direct_sum, identity, is_projective, simple, split_sequence, syzygy


def test_zero_diagram_valid(A2):
    assert pex.validate(pex.zero_diagram(A2)).valid


@pytest.mark.parametrize("x2", range(5))
@pytest.mark.parametrize("y1", range(5))
def test_extension_family(x2, y1):
    fx = pex.extension_fixture(0, x2, y1, 0)
    assert pex.validate(fx.K).valid and pex.validate(fx.A).valid
    assert fx.mono.is_mono() and fx.epi.is_epi()
    assert not fx.mono.naturality_failures() and not fx.epi.naturality_failures()
    v = pex.validate(fx.M)
    assert v.valid == ((y1 + x2) % 5 == 0)
    if not v.valid:
        assert "middle row" in v.first_failure


def test_extension_default_invalid():
    assert not pex.validate(pex.extension_fixture().M).valid


def test_corpus_diagrams_valid():
    diagrams = corpus.all_pex_diagrams()
    assert len(diagrams) > 100
    for name, d in diagrams:
        assert pex.validate(d).valid, name


def test_pullback_along_identity(A2):
    ses = cover_sequence(simple(A2, "1"))
    d = pex.build_from_pullback(ses, identity(ses.right))
    assert is_isomorphic(d["e5"], d["e2"])
    assert d["e7"].is_zero() and d["e8"].is_zero()


def test_split_pullback_along_cover(A3):
    a1, a3 = simple(A3, "3"), simple(A3, "1")
    ses = split_sequence(a1, a3)
    P, epi = cover(a3)
    d = pex.build_from_pullback(ses, epi)
    assert pex.validate(d).valid
    assert is_isomorphic(d["e5"], direct_sum(a1, P))


def test_a2_cover_instance(A2):
    ses = cover_sequence(simple(A2, "1"))
    _, g = cover(ses.right)
    d = pex.build_from_pullback(ses, g)
    v = pex.validate(d)
    assert v.valid and v.diagnostics == []


def test_cover_of_zero(A2):
    c = pex.pex_cover(pex.zero_diagram(A2))
    assert c.K.is_zero() and c.P.is_zero() and c.ok


@pytest.mark.parametrize("name", ["A2", "L2", "A3r"])
def test_cover_kernel_entries_are_syzygies(name):
    alg = corpus.algebra(name)
    for label, d in corpus.pex_diagrams(alg)[:12]:
        c = pex.pex_cover(d)
        assert c.ok, label
        assert pex.validate(c.K).valid and pex.validate(c.P).valid
        for e in ("e3", "e4", "e7"):
            k = c.K[e]
            om = syzygy(d[e])
            assert (k.is_zero() and om.is_zero()) or is_isomorphic(k, om), (label, e)
        assert all(is_projective(c.P[e]) for e in pex.OBJECTS)


def test_cover_of_projective_diagram(A2):
    p1, p2 = projective(A2, "1"), projective(A2, "2")
    ses = split_sequence(p2, p1)
    d = pex.build_from_pullback(ses, identity(ses.right))
    c = pex.pex_cover(d)
    assert c.K.is_zero()
    assert all(c.epi.components[e].is_iso() for e in pex.OBJECTS)


def test_direct_sums(A2):
    (_, d1), (_, d2) = corpus.pex_diagrams(A2)[:2]
    s = pex.direct_sum(d1, pex.zero_diagram(A2))
    assert all(is_isomorphic(s[e], d1[e]) for e in pex.OBJECTS if not d1[e].is_zero())
    assert pex.validate(pex.direct_sum(d1, d2)).valid


def test_sum_with_invalid_is_invalid():
    fx = pex.extension_fixture(0, 0, 1, 0)
    assert not pex.validate(pex.direct_sum(fx.K, fx.M)).valid
    assert pex.validate(pex.direct_sum(fx.K, fx.A)).valid


def test_json_round_trip(A2):
    from syzlab.io import diagram_from_json

    _, d = corpus.pex_diagrams(A2)[4]
    back = diagram_from_json(d.to_json(), A2)
    assert back.to_json() == d.to_json()
    assert diagram_from_json({"diagram": d.to_json()}, A2).dims() == d.dims()
