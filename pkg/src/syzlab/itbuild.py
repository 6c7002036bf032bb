"""Witness searches for the (TS1)-(TS3) hypotheses, the Igusa-Todorov
sequence construction, and n-Igusa-Todorov certificates.

Searches run over finite families with bounded multiplicities, so a
``NOT_FOUND`` verdict only means the bounded search came up empty.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import pex
from .decomp import Verdict as IsoVerdict
from .decomp import _candidates, decompose, is_isomorphic, same_up_to
from .rep import (
    Morphism,
    Representation,
    ShortExactSequence,
    cokernel,
    combine,
    cover,
    direct_sum,
    direct_sum_data,
    ext_dim,
    factor_through_mono,
    hom_space,
    identity,
    is_projective,
    kernel,
    pullback,
    row_morphism,
    section,
    syzygy,
    zero_morphism,
    zero_rep,
)

WITNESSED = "WITNESSED"
NOT_FOUND = "NOT_FOUND"


class SplitFailed(RuntimeError):
    pass


def _flat(m) -> Representation:
    return getattr(m, "flat", m)


def _name(m) -> str:
    m = _flat(m)
    return m.label or str(m.dim_vector())


@dataclass
class ClassFamily:
    """A class of modules given by generators, optionally with a membership predicate.

    ``predicate`` decides membership of an indecomposable; without it an
    indecomposable belongs when it is isomorphic to a summand of a generator.
    """

    label: str
    members: list
    predicate: Callable[[Representation], bool] | None = None
    level: int | None = None
    seed: int = 0
    _pieces: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self.members = [_flat(m) for m in self.members]

    def generators(self) -> list[Representation]:
        """Pairwise non-isomorphic indecomposable summands of the members."""
        if self._pieces is None:
            pieces: list[Representation] = []
            for m in self.members:
                for s in decompose(m, self.seed).summands:
                    if not any(_iso(s.module, q, self.seed) for q in pieces):
                        pieces.append(s.module)
            self._pieces = pieces
        return self._pieces

    def contains_indecomposable(self, x: Representation) -> bool:
        if self.predicate is not None:
            return bool(self.predicate(x))
        return any(_iso(x, q, self.seed) for q in self.generators())

    def contains(self, m) -> bool:
        """Membership in the add-closure (the zero module always belongs)."""
        m = _flat(m)
        if m.is_zero():
            return True
        return all(self.contains_indecomposable(p) for p in decompose(m, self.seed).pieces())


def _iso(a: Representation, b: Representation, seed: int = 0) -> bool:
    return a.dim_vector() == b.dim_vector() and is_isomorphic(a, b, seed).verdict is IsoVerdict.YES


def in_add(m: Representation, generators: list[Representation], seed: int = 0) -> bool:
    if m.is_zero():
        return True
    return all(any(_iso(p, g, seed) for g in generators) for p in decompose(m, seed).pieces())


@dataclass
class TSResult:
    subject: str
    verdict: str
    witness: ShortExactSequence | None = None
    via: str = ""

    @property
    def witnessed(self) -> bool:
        return self.verdict == WITNESSED

    def to_json(self) -> dict:
        out = {"subject": self.subject, "verdict": self.verdict, "via": self.via}
        if self.witness is not None:
            out["left"] = list(self.witness.left.dim_vector())
            out["middle"] = list(self.witness.middle.dim_vector())
            out["right"] = list(self.witness.right.dim_vector())
        return out


def _zero_sequence(m: Representation) -> ShortExactSequence:
    z = zero_rep(m.algebra)
    return ShortExactSequence(zero_morphism(z, m), zero_morphism(m, z))


def _combos(gens: list[Representation], max_mult: int):
    """Direct sums of generators with multiplicities ``<= max_mult``, smallest first."""
    ranges = [range(max_mult + 1)] * len(gens)
    mults = sorted(itertools.product(*ranges), key=lambda t: (sum(t), t))
    for mult in mults:
        if not any(mult):
            continue
        parts = [g for g, k in zip(gens, mult) for _ in range(k)]
        yield direct_sum(*parts)


def _search(source: Representation, target: Representation, accept, seed: int = 0):
    basis = hom_space(source, target)
    if not basis:
        return None
    rng = np.random.default_rng(seed)
    for coeffs, _ in _candidates(len(basis), source.p, rng):
        f = combine(basis, coeffs, source, target)
        w = accept(f)
        if w is not None:
            return w
    return None


def ts1_witness(y: Representation, C: ClassFamily, D: ClassFamily, hints=(), max_mult: int = 2,
                seed: int = 0) -> tuple[ShortExactSequence | None, str]:
    """A sequence ``0 -> C -> y -> D -> 0`` with ``C`` in add C and ``D`` in add D."""
    if y.is_zero():
        return _zero_sequence(y), "trivial"
    for hint in hints:
        seq = hint(y)
        if seq is not None and seq.is_exact() and C.contains(seq.left) and D.contains(seq.right):
            return seq, "hint"
    if D.contains(y):
        z = zero_rep(y.algebra)
        return ShortExactSequence(zero_morphism(z, y), identity(y)), "search"
    if C.contains(y):
        z = zero_rep(y.algebra)
        return ShortExactSequence(identity(y), zero_morphism(y, z)), "search"

    def accept(f: Morphism):
        if not f.is_mono():
            return None
        q, proj = cokernel(f)
        if D.contains(q):
            return ShortExactSequence(f, proj)
        return None

    for s in _combos(C.generators(), max_mult):
        if any(s.dims[v] > y.dims[v] for v in s.dims):
            continue
        w = _search(s, y, accept, seed)
        if w is not None:
            return w, "search"
    return None, ""


def check_ts1(samples, C: ClassFamily, D: ClassFamily, hints=(), max_mult: int = 2, seed: int = 0) -> list[TSResult]:
    out = []
    for x in samples:
        y = syzygy(_flat(x))
        seq, via = ts1_witness(y, C, D, hints, max_mult, seed)
        out.append(TSResult(_name(x), WITNESSED if seq else NOT_FOUND, seq, via))
    return out


def ts2_witness(d: Representation, E: ClassFamily, K: ClassFamily, hints=(), max_mult: int = 2,
                seed: int = 0) -> tuple[ShortExactSequence | None, str]:
    """A sequence ``0 -> K -> E -> d -> 0`` with ``E`` in add E and ``K`` in add K."""
    if d.is_zero():
        return ShortExactSequence(zero_morphism(zero_rep(d.algebra), d), identity(d)), "trivial"
    for hint in hints:
        seq = hint(d)
        if seq is not None and seq.is_exact() and E.contains(seq.middle) and K.contains(seq.left):
            return seq, "hint"

    def accept(f: Morphism):
        if not f.is_epi():
            return None
        k, inc = kernel(f)
        if K.contains(k):
            return ShortExactSequence(inc, f)
        return None

    for s in _combos(E.generators(), max_mult):
        if any(s.dims[v] < d.dims[v] for v in s.dims):
            continue
        w = _search(s, d, accept, seed)
        if w is not None:
            return w, "search"
    return None, ""


def cover_hint(d: Representation) -> ShortExactSequence:
    pc, epi = cover(d)
    k, inc = kernel(epi)
    return ShortExactSequence(inc, epi)


def check_ts2(D: ClassFamily, E: ClassFamily, K: ClassFamily, hints=(cover_hint,), max_mult: int = 2,
              seed: int = 0) -> list[TSResult]:
    out = []
    for d in D.generators():
        if d.is_zero():
            continue
        seq, via = ts2_witness(d, E, K, hints, max_mult, seed)
        out.append(TSResult(_name(d), WITNESSED if seq else NOT_FOUND, seq, via))
    return out


@dataclass
class TS3Result:
    j: int
    table: dict
    passed: bool

    def to_json(self) -> dict:
        return {"j": self.j, "passed": self.passed,
                "table": [{"E": e, "C": c, "ext": v} for (e, c), v in self.table.items()]}


def check_ts3(E: ClassFamily, C: ClassFamily, j: int) -> TS3Result:
    """``Ext^j(E_a, Ω^{j-1} C_b)`` for all generator pairs."""
    if j < 1:
        raise ValueError("j must be positive")
    table = {}
    shifted = [(c, syzygy(c, j - 1)) for c in C.generators()]
    for e in E.generators():
        for c, sc in shifted:
            table[(_name(e), _name(c))] = ext_dim(e, sc, j)
    return TS3Result(j, table, all(v == 0 for v in table.values()))


# the Igusa-Todorov sequence -----------------------------------------------


@dataclass
class ITSequence:
    sequence: ShortExactSequence
    ts1: ShortExactSequence
    ts2: ShortExactSequence
    j: int
    m: int
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "m": self.m,
            "left": list(self.sequence.left.dim_vector()),
            "middle": list(self.sequence.middle.dim_vector()),
            "right": list(self.sequence.right.dim_vector()),
            "checks": dict(self.checks),
        }


def _nonprojective(m: Representation, seed: int = 0) -> list[Representation]:
    return [p for p in decompose(m, seed).pieces() if not is_projective(p)] if not m.is_zero() else []


def _split_middle_row(d: pex.PExDiagram) -> ShortExactSequence:
    """Use a section of ``e5 -> e6`` to rewrite the middle column through ``e4 ⊕ e6``."""
    a45, a56 = d.maps["a45"], d.maps["a56"]
    sigma = section(a56)
    if sigma is None:
        raise SplitFailed("middle row does not split")
    ds = direct_sum_data([d.objects["e4"], d.objects["e6"]])
    phi = row_morphism([a45, sigma], ds.module)
    if not phi.is_iso():
        raise SplitFailed("splitting map is not an isomorphism")
    inv = phi.inverse()
    return ShortExactSequence(inv @ d.maps["a75"], d.maps["a52"] @ phi)


def horseshoe(seq: ShortExactSequence) -> ShortExactSequence:
    """``0 -> ΩL -> ΩM ⊕ Q -> ΩR -> 0`` from minimal covers of the end terms."""
    d = pex.build_from_pullback(seq, identity(seq.right))
    return pex.pex_cover(d).K.sequence("bottom row")


def build_it_sequence(x, ts1: ShortExactSequence, ts2: ShortExactSequence, j: int, m: int,
                      seed: int = 0) -> ITSequence:
    """``0 -> Ω^{m-1}K -> Ω^{m-1}C ⊕ Ω^{m-1}E ⊕ Q -> Ω^m X ⊕ Q' -> 0``.

    ``ts1`` is ``0 -> C -> ΩX -> D -> 0`` and ``ts2`` is ``0 -> K -> E -> D -> 0``
    over the same ``D``.
    """
    x = _flat(x)
    if j < 1 or m < j + 1:
        raise ValueError("need j >= 1 and m >= j + 1")
    if ts2.right is not ts1.right:
        raise ValueError("the two witnesses must end in the same module")
    d = pex.build_from_pullback(ts1, ts2.epi)
    for _ in range(j - 1):
        d = pex.pex_cover(d).K
    seq = _split_middle_row(d)
    for _ in range(m - j):
        seq = horseshoe(seq)
    C, E, K = ts1.left, ts2.middle, ts2.left
    left_expected = syzygy(K, m - 1)
    middle_expected = _nonprojective(syzygy(C, m - 1), seed) + _nonprojective(syzygy(E, m - 1), seed)
    checks = {
        "exact": seq.is_exact(),
        "left is Ω^(m-1)K": (seq.left.is_zero() and left_expected.is_zero())
        or _iso(seq.left, left_expected, seed),
        "middle is Ω^(m-1)C ⊕ Ω^(m-1)E ⊕ proj": same_up_to(_nonprojective(seq.middle, seed), middle_expected, seed),
        "right is Ω^m X ⊕ proj": same_up_to(_nonprojective(seq.right, seed), _nonprojective(syzygy(x, m), seed), seed),
    }
    return ITSequence(seq, ts1, ts2, j, m, checks)


def strip_projective(seq: ShortExactSequence, y_inclusion: Morphism | None = None, seed: int = 0) -> ShortExactSequence:
    """From ``0 -> V1 -> V0' -> Y ⊕ P -> 0`` to ``0 -> V1 -> V0 -> Y -> 0``.

    ``y_inclusion: Y -> Y ⊕ P`` defaults to the non-projective part of the
    right term; ``V0`` is the pullback along it, a summand of ``V0'``.
    """
    right = seq.right
    if y_inclusion is None:
        dec = decompose(right, seed)
        incs = [i for s in dec.summands if not is_projective(s.module) for i in s.inclusions]
        if len(incs) == sum(s.multiplicity for s in dec.summands):
            return seq
        if incs:
            y = direct_sum(*[i.source for i in incs])
            y_inclusion = row_morphism(incs, y)
        else:
            z = zero_rep(right.algebra)
            y_inclusion = zero_morphism(z, right)
    if y_inclusion.is_iso():
        return seq
    v0, to_mid, to_y = pullback(seq.epi, y_inclusion)
    v1_in = factor_through_mono(to_mid, seq.mono)
    if v1_in is None:
        raise AssertionError("left term does not lift to the pullback")
    out = ShortExactSequence(v1_in, to_y)
    if not out.is_exact():
        raise AssertionError("; ".join(out.failures()))
    return out


# certificates --------------------------------------------------------------


@dataclass
class CertificateWitness:
    sample: str
    sequence: ShortExactSequence | None
    ok: bool
    reason: str = ""

    def to_json(self) -> dict:
        out = {"sample": self.sample, "ok": self.ok, "reason": self.reason}
        if self.sequence is not None:
            out["V1"] = list(self.sequence.left.dim_vector())
            out["V0"] = list(self.sequence.middle.dim_vector())
            out["target"] = list(self.sequence.right.dim_vector())
        return out


@dataclass
class ITCertificate:
    n: int
    V: Representation
    witnesses: list[CertificateWitness]

    @property
    def ok(self) -> bool:
        return all(w.ok for w in self.witnesses)

    @property
    def counterexample(self) -> str | None:
        return next((w.sample for w in self.witnesses if not w.ok), None)

    def to_json(self) -> dict:
        return {"n": self.n, "V": list(self.V.dim_vector()), "ok": self.ok,
                "witnesses": [w.to_json() for w in self.witnesses]}


def add_approximation(pieces: list[Representation], y: Representation) -> Morphism:
    """``⊕_i V_i^{dim Hom(V_i, y)} -> y`` assembled from Hom bases."""
    maps, sources = [], []
    for v in pieces:
        for h in hom_space(v, y):
            maps.append(h)
            sources.append(v)
    if not maps:
        z = zero_rep(y.algebra)
        return zero_morphism(z, y)
    return row_morphism(maps, direct_sum(*sources))


def verify_it_certificate(V, samples, n: int, seed: int = 0) -> ITCertificate:
    """For each sample build ``0 -> V1 -> V0 -> Ω^n X ⊕ P -> 0`` with ``V0, V1`` in add V."""
    V = _flat(V)
    fam = ClassFamily("V", [V], seed=seed)
    pieces = fam.generators() if not V.is_zero() else []
    out = []
    for x in samples:
        y = syzygy(_flat(x), n)
        name = _name(x)
        if y.is_zero():
            out.append(CertificateWitness(name, _zero_sequence(y), True, "Ω^n X = 0"))
            continue
        g = add_approximation(pieces, y)
        if not g.is_epi():
            pc, pi = cover(y)
            if not fam.contains(pc):
                out.append(CertificateWitness(name, None, False, "add V approximation is not surjective"))
                continue
            ds = direct_sum_data([g.source, pc])
            g = row_morphism([g, pi], ds.module)
        k, inc = kernel(g)
        seq = ShortExactSequence(inc, g)
        ok = seq.is_exact() and fam.contains(k)
        out.append(CertificateWitness(name, seq, ok, "" if ok else "kernel of the approximation is not in add V"))
    return ITCertificate(n, V, out)


# the triangular preset ----------------------------------------------------


@dataclass
class ITScenario:
    C: ClassFamily
    D: ClassFamily
    E: ClassFamily
    K: ClassFamily
    j: int
    n: int
    p: int
    ts1_hints: tuple = ()
    ts2_hints: tuple = (cover_hint,)

    @property
    def m(self) -> int:
        return max(self.p, self.n, self.j) + 1

    def run(self, samples, seed: int = 0) -> dict:
        ts2 = check_ts2(self.D, self.E, self.K, self.ts2_hints, seed=seed)
        ts3 = check_ts3(self.E, self.C, self.j)
        seqs = []
        for x in samples:
            y = syzygy(_flat(x))
            w1, _ = ts1_witness(y, self.C, self.D, self.ts1_hints, seed=seed)
            if w1 is None:
                seqs.append((_name(x), None))
                continue
            w2, _ = ts2_witness(w1.right, self.E, self.K, self.ts2_hints, seed=seed)
            if w2 is None:
                seqs.append((_name(x), None))
                continue
            seqs.append((_name(x), build_it_sequence(x, w1, w2, self.j, self.m, seed)))
        return {"ts2": ts2, "ts3": ts3, "sequences": seqs}


def triangular_preset(alg, t_modules=None, u_modules=None, seed: int = 0) -> ITScenario:
    """C = 𝒰, D = 𝒯, E = {(P, M⊗P, 1)}, K = Ω𝒯 over a triangular algebra; j = 1."""
    from .decomp import nakayama_indecomposables
    from .itfunc import syzygy_finiteness_search
    from .quiver import is_nakayama, projective
    from .triangular import TripleModule, canonical_ses, embed_bar, embed_under, triple

    def default(a):
        if is_nakayama(a):
            return nakayama_indecomposables(a)
        return [projective(a, v) for v in a.vertices]

    t_modules = list(t_modules) if t_modules is not None else default(alg.T)
    u_modules = list(u_modules) if u_modules is not None else default(alg.U)
    t_bar = [embed_bar(alg, a).flat for a in t_modules]
    u_under = [embed_under(alg, b).flat for b in u_modules]
    e_gens = []
    for v in alg.T.vertices:
        pv = projective(alg.T, v)
        t = alg.tensor(pv)
        e_gens.append(triple(alg, pv, t.module, identity(t.module), label=f"({pv.label},M⊗{pv.label},1)").flat)
    k_gens = [syzygy(x) for x in t_bar]
    k_gens = [k for k in k_gens if not k.is_zero()]
    t_zero = lambda x: all(x.dims[f"T:{v}"] == 0 for v in alg.T.vertices)
    u_zero = lambda x: all(x.dims[f"U:{w}"] == 0 for w in alg.U.vertices)
    level = lambda fam: syzygy_finiteness_search(fam, n_max=4).level if fam else 0
    C = ClassFamily("C", u_under, t_zero, level(u_under), seed)
    D = ClassFamily("D", t_bar, u_zero, level(t_bar), seed)
    E = ClassFamily("E", e_gens, None, level(e_gens), seed)
    K = ClassFamily("K", k_gens, None, level(k_gens), seed)
    none_to_zero = lambda v: 0 if v is None else v
    n = max(none_to_zero(C.level), none_to_zero(E.level))

    def canonical_hint(y):
        return canonical_ses(TripleModule(alg, y))

    return ITScenario(C, D, E, K, 1, n, none_to_zero(K.level), (canonical_hint,), (cover_hint,))
