"""Pullback diagrams of short exact sequences.

A diagram has eight objects on the grid

           e7 -> e8
           |     |
    e4 -> e5 -> e6
    |      |     |
    e1 -> e2 -> e3

with ``e4 -> e1`` and ``e7 -> e8`` isomorphisms, exact rows and columns and
commuting squares.  Every such diagram is the pullback of its bottom row
along ``e6 -> e3``; :func:`pex_cover` builds an entrywise projective diagram
covering it, with a kernel that is again a pullback diagram.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ff
from .rep import (
    Morphism,
    Representation,
    ShortExactSequence,
    direct_sum_data,
    factor_through,
    factor_through_mono,
    identity,
    is_projective,
    kernel,
    morphism_direct_sum,
    cover,
    pullback,
    zero_morphism,
    zero_rep,
)

OBJECTS = tuple(f"e{i}" for i in range(1, 9))
ARROWS = {
    "a78": ("e7", "e8"),
    "a75": ("e7", "e5"),
    "a86": ("e8", "e6"),
    "a45": ("e4", "e5"),
    "a56": ("e5", "e6"),
    "a41": ("e4", "e1"),
    "a52": ("e5", "e2"),
    "a63": ("e6", "e3"),
    "a12": ("e1", "e2"),
    "a23": ("e2", "e3"),
}
ISOS = ("a41", "a78")
MONOS = ("a12", "a45", "a75", "a86")
EPIS = ("a52", "a63", "a56", "a23")
SEQUENCES = {
    "middle row": ("a45", "a56"),
    "bottom row": ("a12", "a23"),
    "middle column": ("a75", "a52"),
    "right column": ("a86", "a63"),
}
SQUARES = {
    "top square": (("a78", "a86"), ("a75", "a56")),
    "left square": (("a41", "a12"), ("a45", "a52")),
    "right square": (("a52", "a23"), ("a56", "a63")),
}


class PExError(ValueError):
    pass


@dataclass
class PExDiagram:
    objects: dict
    maps: dict

    def __post_init__(self):
        if set(self.objects) != set(OBJECTS):
            raise PExError(f"objects must be keyed {OBJECTS}")
        if set(self.maps) != set(ARROWS):
            raise PExError(f"maps must be keyed {tuple(ARROWS)}")
        for name, (s, t) in ARROWS.items():
            f = self.maps[name]
            if f.source is not self.objects[s] or f.target is not self.objects[t]:
                raise PExError(f"{name} does not go from {s} to {t}")

    @property
    def algebra(self):
        return self.objects["e1"].algebra

    def __getitem__(self, key):
        return self.objects[key] if key in self.objects else self.maps[key]

    def dims(self) -> dict:
        return {e: self.objects[e].dim for e in OBJECTS}

    def is_zero(self) -> bool:
        return all(self.objects[e].is_zero() for e in OBJECTS)

    def sequence(self, which: str) -> ShortExactSequence:
        a, b = SEQUENCES[which]
        return ShortExactSequence(self.maps[a], self.maps[b])

    def to_json(self) -> dict:
        return {
            "objects": {e: self.objects[e].to_json() for e in OBJECTS},
            "maps": {a: self.maps[a].to_json() for a in ARROWS},
        }


@dataclass
class Validation:
    valid: bool
    diagnostics: list[tuple[str, str]] = field(default_factory=list)

    @property
    def first_failure(self) -> str | None:
        return self.diagnostics[0][1] if self.diagnostics else None

    def __bool__(self):
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "diagnostics": [{"axiom": a, "message": m} for a, m in self.diagnostics]}


def _exact_at_middle(f: Morphism, g: Morphism) -> bool:
    p = f.p
    for v in f.maps:
        if np.any(ff.mul(g.maps[v], f.maps[v], p)):
            return False
        if ff.rank(f.maps[v], p) + ff.rank(g.maps[v], p) != f.target.dims[v]:
            return False
    return True


def validate(d: PExDiagram) -> Validation:
    """Check the four defining conditions; diagnostics are listed in axiom order."""
    diag = []
    for a in ISOS:
        if not d.maps[a].is_iso():
            diag.append(("isomorphisms", f"{a} is not an isomorphism"))
    for a in MONOS:
        if not d.maps[a].is_mono():
            diag.append(("monomorphisms", f"{a} is not a monomorphism"))
    for a in EPIS:
        if not d.maps[a].is_epi():
            diag.append(("epimorphisms", f"{a} is not an epimorphism"))
    for name, (a, b) in SEQUENCES.items():
        f, g = d.maps[a], d.maps[b]
        if not (f.is_mono() and g.is_epi() and _exact_at_middle(f, g)):
            diag.append(("exactness", f"{name} not exact"))
    for name, (left, right) in SQUARES.items():
        lhs = d.maps[left[1]] @ d.maps[left[0]]
        rhs = d.maps[right[1]] @ d.maps[right[0]]
        if not lhs.equals(rhs):
            diag.append(("exactness", f"{name} does not commute"))
    return Validation(not diag, diag)


@dataclass
class PExMorphism:
    source: PExDiagram
    target: PExDiagram
    components: dict

    def naturality_failures(self) -> list[str]:
        bad = []
        for name, (s, t) in ARROWS.items():
            lhs = self.target.maps[name] @ self.components[s]
            rhs = self.components[t] @ self.source.maps[name]
            if not lhs.equals(rhs):
                bad.append(f"square at {name} does not commute")
        return bad

    def is_mono(self) -> bool:
        return all(self.components[e].is_mono() for e in OBJECTS)

    def is_epi(self) -> bool:
        return all(self.components[e].is_epi() for e in OBJECTS)

    def __matmul__(self, other: "PExMorphism") -> "PExMorphism":
        return PExMorphism(other.source, self.target, {e: self.components[e] @ other.components[e] for e in OBJECTS})


def zero_diagram(alg) -> PExDiagram:
    z = zero_rep(alg)
    return PExDiagram({e: z for e in OBJECTS}, {a: identity(z) for a in ARROWS})


def build_from_pullback(ses: ShortExactSequence, g: Morphism) -> PExDiagram:
    """The pullback diagram of ``0 -> A1 -> A2 -> A3 -> 0`` along ``g: A6 -> A3``."""
    if not g.is_epi():
        raise PExError("g must be an epimorphism")
    h = ses.epi
    if g.target is not h.target:
        raise PExError("g and the sequence end in different modules")
    a5, beta, alpha = pullback(h, g)
    a4, a45 = kernel(alpha)
    a41 = factor_through_mono(ses.mono, beta @ a45)
    if a41 is None:
        raise PExError("kernel of a56 does not land in A1")
    a7, a75 = kernel(beta)
    a8, a86 = kernel(g)
    a78 = factor_through_mono(a86, alpha @ a75)
    objects = {"e1": ses.left, "e2": ses.middle, "e3": ses.right, "e4": a4, "e5": a5, "e6": g.source,
               "e7": a7, "e8": a8}
    maps = {"a78": a78, "a75": a75, "a86": a86, "a45": a45, "a56": alpha, "a41": a41, "a52": beta, "a63": g,
            "a12": ses.mono, "a23": h}
    d = PExDiagram(objects, maps)
    v = validate(d)
    if not v.valid:
        raise AssertionError(f"pullback construction failed: {v.first_failure}")
    return d


def direct_sum(d1: PExDiagram, d2: PExDiagram) -> PExDiagram:
    data = {e: direct_sum_data([d1.objects[e], d2.objects[e]]) for e in OBJECTS}
    objects = {e: data[e].module for e in OBJECTS}
    maps = {a: morphism_direct_sum([d1.maps[a], d2.maps[a]], objects[s], objects[t]) for a, (s, t) in ARROWS.items()}
    return PExDiagram(objects, maps)


@dataclass
class PExCover:
    K: PExDiagram
    P: PExDiagram
    mono: PExMorphism
    epi: PExMorphism
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _inj(ds, k):
    return ds.injections[k]


def _proj(ds, k):
    return ds.projections[k]


def pex_cover(a: PExDiagram) -> PExCover:
    """``0 -> K -> P -> A -> 0`` with ``P`` entrywise projective (minimal covers at e3, e4, e7)."""
    v = validate(a)
    if not v.valid:
        raise PExError(f"input diagram is invalid: {v.first_failure}")
    o, m = a.objects, a.maps
    P3, p3 = cover(o["e3"])
    P4, p4 = cover(o["e4"])
    P7, p7 = cover(o["e7"])
    d13 = direct_sum_data([P4, P3])
    d438 = direct_sum_data([P4, P3, P7])
    d38 = direct_sum_data([P3, P7])
    P13, P438, P38 = d13.module, d438.module, d38.module
    # lifts of p3 through the two epimorphisms onto A3
    l2 = factor_through(m["a23"], p3)
    l6 = factor_through(m["a63"], p3)
    if l2 is None or l6 is None:
        raise AssertionError("projective lifting failed")
    u = m["a12"] @ m["a41"] @ p4 @ _proj(d13, 0) + l2 @ _proj(d13, 1)
    s = l6 @ _proj(d38, 0) + m["a86"] @ m["a78"] @ p7 @ _proj(d38, 1)
    t = _inj(d38, 0) @ _proj(d438, 1) + _inj(d38, 1) @ _proj(d438, 2)
    vmap = _inj(d13, 0) @ _proj(d438, 0) + _inj(d13, 1) @ _proj(d438, 1)
    f = _solve_pullback(m["a56"], m["a52"], s @ t, u @ vmap)
    P = PExDiagram(
        {"e1": P4, "e2": P13, "e3": P3, "e4": P4, "e5": P438, "e6": P38, "e7": P7, "e8": P7},
        {
            "a78": identity(P7),
            "a75": _inj(d438, 2),
            "a86": _inj(d38, 1),
            "a45": _inj(d438, 0),
            "a56": t,
            "a41": identity(P4),
            "a52": vmap,
            "a63": _proj(d38, 0),
            "a12": _inj(d13, 0),
            "a23": _proj(d13, 1),
        },
    )
    epi = PExMorphism(P, a, {"e1": m["a41"] @ p4, "e2": u, "e3": p3, "e4": p4, "e5": f, "e6": s, "e7": p7,
                             "e8": m["a78"] @ p7})
    kers = {e: kernel(epi.components[e]) for e in OBJECTS}
    kmaps = {}
    for name, (src, tgt) in ARROWS.items():
        h = factor_through_mono(kers[tgt][1], P.maps[name] @ kers[src][1])
        if h is None:
            raise AssertionError(f"kernel map {name} does not restrict")
        kmaps[name] = h
    K = PExDiagram({e: kers[e][0] for e in OBJECTS}, kmaps)
    mono = PExMorphism(K, P, {e: kers[e][1] for e in OBJECTS})
    checks = {
        "P valid": validate(P).valid,
        "P entrywise projective": all(is_projective(P.objects[e]) for e in OBJECTS),
        "K valid": validate(K).valid,
        "epi natural": not epi.naturality_failures(),
        "mono natural": not mono.naturality_failures(),
        "componentwise exact": all(ShortExactSequence(mono.components[e], epi.components[e]).is_exact() for e in OBJECTS),
    }
    return PExCover(K, P, mono, epi, checks)


def _solve_pullback(alpha: Morphism, beta: Morphism, x: Morphism, y: Morphism) -> Morphism:
    """The unique ``f`` with ``alpha f = x`` and ``beta f = y`` (``[alpha; beta]`` is mono)."""
    p = alpha.p
    maps = {}
    for v in alpha.maps:
        stacked = np.vstack([alpha.maps[v], beta.maps[v]])
        if ff.rank(stacked, p) != stacked.shape[1]:
            raise AssertionError("pullback projections are not jointly injective")
        sol = ff.solve(stacked, np.vstack([x.maps[v], y.maps[v]]), p)
        if sol is None:
            raise AssertionError("no map into the pullback")
        maps[v] = sol
    return Morphism(x.source, alpha.source, maps)


# the extension counterexample ---------------------------------------------


def _fixture_diagram(alg, d4: int, d6: int, a45, a56) -> PExDiagram:
    """Top row zero, bottom row a copy of the middle row, verticals identities."""
    z = zero_rep(alg)
    m4 = Representation(alg, {"0": d4}, {})
    m5 = Representation(alg, {"0": np.asarray(a45).shape[0]}, {})
    m6 = Representation(alg, {"0": d6}, {})
    m1 = Representation(alg, {"0": d4}, {})
    m2 = Representation(alg, {"0": m5.dim}, {})
    m3 = Representation(alg, {"0": d6}, {})
    mor = lambda s, t, mat: Morphism(s, t, {"0": np.asarray(mat, dtype=np.int64)})
    objects = {"e1": m1, "e2": m2, "e3": m3, "e4": m4, "e5": m5, "e6": m6, "e7": z, "e8": z}
    maps = {
        "a78": identity(z),
        "a75": zero_morphism(z, m5),
        "a86": zero_morphism(z, m6),
        "a45": mor(m4, m5, a45),
        "a56": mor(m5, m6, a56),
        "a41": mor(m4, m1, ff.eye(d4)),
        "a52": mor(m5, m2, ff.eye(m5.dim)),
        "a63": mor(m6, m3, ff.eye(d6)),
        "a12": mor(m1, m2, a45),
        "a23": mor(m2, m3, a56),
    }
    return PExDiagram(objects, maps)


@dataclass
class ExtensionFixture:
    K: PExDiagram
    M: PExDiagram
    A: PExDiagram
    mono: PExMorphism
    epi: PExMorphism


def extension_fixture(x1: int = 0, x2: int = 0, y1: int = 1, y2: int = 0, p: int = ff.DEFAULT_CHAR) -> ExtensionFixture:
    """``0 -> K -> M -> A -> 0`` over a field with ``K_4 = K_6 = A_4 = A_6 = k``.

    ``K`` and ``A`` are split pullback diagrams; the middle row of ``M`` is
    ``[[1, x1], [0, 1], [0, x2], [0, 0]]`` followed by ``[[0, y1, 1, y2], [0, 0, 0, 1]]``,
    whose composite is ``[[0, y1 + x2], [0, 0]]``.
    """
    from .quiver import field_algebra

    alg = field_algebra(p)
    K = _fixture_diagram(alg, 1, 1, [[1], [0]], [[0, 1]])
    A = _fixture_diagram(alg, 1, 1, [[1], [0]], [[0, 1]])
    M = _fixture_diagram(alg, 2, 2, [[1, x1], [0, 1], [0, x2], [0, 0]], [[0, y1, 1, y2], [0, 0, 0, 1]])
    k_in = {4: [[1], [0]], 5: [[1, 0], [0, 0], [0, 1], [0, 0]], 6: [[1], [0]]}
    a_out = {4: [[0, 1]], 5: [[0, 1, 0, 0], [0, 0, 0, 1]], 6: [[0, 1]]}
    pairs = {1: 4, 2: 5, 3: 6, 4: 4, 5: 5, 6: 6}

    def comp(src, tgt, table, e):
        if e in ("e7", "e8"):
            return zero_morphism(src.objects[e], tgt.objects[e])
        mat = table[pairs[int(e[1])]]
        return Morphism(src.objects[e], tgt.objects[e], {"0": np.asarray(mat, dtype=np.int64)})

    mono = PExMorphism(K, M, {e: comp(K, M, k_in, e) for e in OBJECTS})
    epi = PExMorphism(M, A, {e: comp(M, A, a_out, e) for e in OBJECTS})
    return ExtensionFixture(K, M, A, mono, epi)
