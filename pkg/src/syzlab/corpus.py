"""The shipped corpus: small algebras, modules, triples, sequences and diagrams.

Algebras are cached per ``(name, p)`` because modules are tied to their
algebra object by identity.
"""

from __future__ import annotations

import re
from functools import lru_cache

from . import ff, pex
from .decomp import nakayama_indecomposables
from .quiver import BoundQuiverAlgebra, a2_algebra, a3_algebra, is_nakayama, loop_algebra, projective
from .rep import (
    Representation,
    ShortExactSequence,
    cokernel,
    cover,
    cover_sequence,
    direct_sum,
    direct_sum_data,
    hom_space,
    identity,
    kernel,
    simple,
    split_sequence,
)
from .triangular import TriangularAlgebra, TripleModule, embed_bar, embed_under, t_k_algebra, triple, triple_direct_sum

BASE = {"A2": a2_algebra, "L2": loop_algebra, "A3r": a3_algebra}
TOWERS = ("T2(L2)", "T2(A2)", "T2(A3r)", "T3(L2)", "T3(A2)", "T3(A3r)")
NAMES = tuple(BASE) + TOWERS

_tower = re.compile(r"T(\d+)\((\w+)\)$")


def algebra(name: str, p: int = ff.DEFAULT_CHAR):
    return _algebra(name, int(p))


@lru_cache(maxsize=None)
def _algebra(name: str, p: int):
    if name in BASE:
        return BASE[name](p)
    m = _tower.match(name)
    if m is None or m.group(2) not in BASE:
        raise KeyError(f"unknown corpus algebra {name!r}; known: {', '.join(NAMES)}")
    return t_k_algebra(_algebra(m.group(2), p), int(m.group(1)))


def indecomposables(alg: BoundQuiverAlgebra) -> list[Representation]:
    """All indecomposables up to isomorphism; available for Nakayama algebras."""
    if not is_nakayama(alg):
        raise ValueError(f"{alg.name} is not Nakayama; no exhaustive list")
    return nakayama_indecomposables(alg)


def representation_finite(alg) -> bool:
    return isinstance(alg, BoundQuiverAlgebra) and is_nakayama(alg)


def module_samples(alg: BoundQuiverAlgebra) -> list[Representation]:
    """Indecomposables when they are enumerable, else projectives and simples."""
    if is_nakayama(alg):
        return indecomposables(alg)
    out = [projective(alg, v) for v in alg.vertices]
    return out + [simple(alg, v) for v in alg.vertices]


def corpus_modules(alg: BoundQuiverAlgebra) -> list[Representation]:
    """Indecomposables, pairwise sums of distinct ones, and the regular module."""
    inds = module_samples(alg)
    out = list(inds)
    for i, x in enumerate(inds):
        for y in inds[i + 1:]:
            out.append(_labelled(direct_sum(x, y), f"{x.label}⊕{y.label}"))
    reg = direct_sum(*[projective(alg, v) for v in alg.vertices])
    out.append(_labelled(reg, "Λ"))
    return out


def _labelled(m: Representation, label: str) -> Representation:
    return Representation(m.algebra, m.dims, m.maps, label=label)


def u_samples(alg: TriangularAlgebra) -> list[Representation]:
    out = module_samples(alg.U)
    if not is_nakayama(alg.U):
        for a in module_samples(alg.T):
            t = alg.tensor(a)
            out.append(_labelled(t.module, f"M⊗{a.label}"))
    return out


def corpus_triples(alg: TriangularAlgebra, per_pair: int = 2) -> list[TripleModule]:
    """Bars, unders, and ``(A, B, h)`` for Hom-basis elements ``h`` and their sum.

    The mixed list contains both maps landing in the radical of ``B`` and
    maps that do not.
    """
    ts = module_samples(alg.T)
    us = u_samples(alg)
    out = [embed_bar(alg, a) for a in ts] + [embed_under(alg, b) for b in us]
    for a in ts:
        t = alg.tensor(a)
        for b in us:
            basis = hom_space(t.module, b)
            picks = basis[:per_pair]
            for k, h in enumerate(picks):
                out.append(triple(alg, a, b, h, label=f"({a.label},{b.label},h{k})"))
            if len(basis) > 1:
                total = basis[0]
                for h in basis[1:per_pair]:
                    total = total + h
                out.append(triple(alg, a, b, total, label=f"({a.label},{b.label},Σh)"))
    if len(out) >= 2:
        s = triple_direct_sum(out[0], out[-1])
        out.append(TripleModule(alg, _labelled(s.flat, f"{out[0].label}⊕{out[-1].label}")))
    return out


def corpus_sequences(alg: BoundQuiverAlgebra) -> list[tuple[str, ShortExactSequence]]:
    """Cover sequences, split sequences, and kernel/cokernel sequences of Hom-basis maps."""
    inds = module_samples(alg)
    out = []
    for m in inds:
        out.append((f"cover {m.label}", cover_sequence(m)))
    for i, x in enumerate(inds):
        for z in inds[i:]:
            out.append((f"split {x.label},{z.label}", split_sequence(x, z)))
    for x in inds:
        for y in inds:
            if x is y:
                continue
            for h in hom_space(x, y):
                if h.is_epi():
                    k, inc = kernel(h)
                    out.append((f"ker {x.label}->{y.label}", ShortExactSequence(inc, h)))
                elif h.is_mono():
                    c, q = cokernel(h)
                    out.append((f"coker {x.label}->{y.label}", ShortExactSequence(h, q)))
    return out


def pex_diagrams(alg: BoundQuiverAlgebra) -> list[tuple[str, pex.PExDiagram]]:
    """``build_from_pullback`` along identities, covers and split projections."""
    out = []
    for name, ses in corpus_sequences(alg):
        if ses.right.is_zero():
            continue
        out.append((f"{name} | id", pex.build_from_pullback(ses, identity(ses.right))))
        pc, epi = cover(ses.right)
        out.append((f"{name} | cover", pex.build_from_pullback(ses, epi)))
        extra = projective(alg, alg.vertices[0])
        ds = direct_sum_data([ses.right, extra])
        out.append((f"{name} | split", pex.build_from_pullback(ses, ds.projections[0])))
    return out


def all_pex_diagrams(p: int = ff.DEFAULT_CHAR) -> list[tuple[str, pex.PExDiagram]]:
    out = []
    for name in BASE:
        alg = algebra(name, p)
        out += [(f"{name}: {label}", d) for label, d in pex_diagrams(alg)]
    first, second = out[0][1], out[1][1]
    out.append(("sum of two diagrams", pex.direct_sum(first, second)))
    return out
