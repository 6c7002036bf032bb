"""Bound quiver algebras over GF(p).

Paths are written left to right: the path ``(a, b)`` means "first ``a``, then
``b``".  A representation assigns to an arrow ``a: s -> t`` a matrix from the
space at ``s`` to the space at ``t``, so the path ``(a, b)`` acts by
``M(b) @ M(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import NamedTuple

import numpy as np

from . import ff

DEFAULT_LENGTH_CAP = 32


class NotAdmissible(ValueError):
    """Paths survive beyond the length cap: the algebra looks infinite dimensional."""


class NonUniformRelation(ValueError):
    """A relation mixes paths with different endpoints."""


class Arrow(NamedTuple):
    name: str
    src: str
    tgt: str


class Path(NamedTuple):
    src: str
    tgt: str
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return "·".join(self.arrows) if self.arrows else f"e{self.src}"


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(Arrow(*(str(x) for x in a)) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex identifiers must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise ValueError(f"arrow {a.name} has an undeclared endpoint")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def out_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def in_arrows(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.tgt == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.tgt, a.src) for a in self.arrows))


Relation = tuple[tuple[int, tuple[str, ...]], ...]


def _paths_by_length(q: Quiver, max_len: int) -> list[list[Path]]:
    layers = [[Path(v, v, ()) for v in q.vertices]]
    for _ in range(max_len):
        nxt = []
        for path in layers[-1]:
            for a in q.out_arrows(path.tgt):
                nxt.append(Path(path.src, a.tgt, path.arrows + (a.name,)))
        layers.append(nxt)
    return layers


@dataclass(frozen=True, eq=False)
class BoundQuiverAlgebra:
    """Path algebra of ``quiver`` over GF(``char``) modulo ``relations``.

    Build instances with :func:`build_algebra`; the constructor stores the
    computed path basis and normal forms.
    """

    name: str
    quiver: Quiver
    char: int
    relations: tuple[Relation, ...]
    basis: tuple[Path, ...]
    _normal: dict = field(repr=False)
    _trunc: int = field(repr=False)

    @property
    def p(self) -> int:
        return self.char

    @property
    def total_dimension(self) -> int:
        return len(self.basis)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    def basis_between(self, s: str, t: str) -> list[Path]:
        return [b for b in self.basis if b.src == s and b.tgt == t]

    def normal_form(self, path: Path) -> dict[Path, int]:
        """Coordinates of ``path`` in the path basis (a sparse dict)."""
        if path.length >= self._trunc:
            return {}
        return self._normal[path]

    def compose(self, first: Path, then: Path) -> dict[Path, int]:
        if first.tgt != then.src:
            return {}
        return self.normal_form(Path(first.src, then.tgt, first.arrows + then.arrows))

    def presentation(self) -> tuple:
        return (self.quiver, self.char, self.relations)

    def same_presentation(self, other: "BoundQuiverAlgebra") -> bool:
        return self.presentation() == other.presentation()

    # hooks shared with triangular algebras
    def projective_cover(self, rep):
        from .rep import projective_cover

        return projective_cover(rep)

    def relation_failures(self, rep) -> list[str]:
        from .rep import evaluate_path

        bad = []
        for k, rel in enumerate(self.relations):
            s = self.quiver.arrow(rel[0][1][0]).src
            t = self.quiver.arrow(rel[0][1][-1]).tgt
            acc = ff.zeros(rep.dims[t], rep.dims[s])
            for c, arrows in rel:
                acc = acc + c * evaluate_path(rep, arrows, s)
            if np.any(acc % self.char):
                bad.append(f"relation {k} does not act as zero")
        return bad

    def indecomposable_projectives(self):
        return [projective(self, v) for v in self.vertices]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "char": self.char,
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in self.quiver.arrows],
            "relations": [[{"coeff": c, "path": list(path)} for c, path in rel] for rel in self.relations],
        }

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name!r}, dim={self.total_dimension}, p={self.char})"


_anon = count()


def build_algebra(
    quiver: Quiver,
    p: int = ff.DEFAULT_CHAR,
    relations=(),
    name: str | None = None,
    length_cap: int = DEFAULT_LENGTH_CAP,
) -> BoundQuiverAlgebra:
    """Compute the path basis of ``k Q / I`` for an admissible ideal ``I``.

    Admissibility is certified: with ``J`` the arrow ideal, we look for the
    least ``N`` such that every path of length ``N - 1`` lies in
    ``I + J^N`` (checked in the finite-dimensional truncation ``kQ / J^N``).
    """
    p = ff.check_char(p)
    rels: list[Relation] = []
    for rel in relations:
        terms = []
        ends = set()
        for c, path in rel:
            c = int(c)
            if not 0 <= c < p:
                raise ValueError(f"coefficient {c} is not reduced mod {p}")
            path = tuple(str(x) for x in path)
            if len(path) < 2:
                raise ValueError("relation paths must have length at least 2")
            arrows = [quiver.arrow(x) for x in path]
            for x, y in zip(arrows, arrows[1:]):
                if x.tgt != y.src:
                    raise ValueError(f"{path} is not a path")
            ends.add((arrows[0].src, arrows[-1].tgt))
            if c:
                terms.append((c, path))
        if len(ends) > 1:
            raise NonUniformRelation(f"relation terms have endpoints {sorted(ends)}")
        if terms:
            rels.append(tuple(terms))
    rels_t = tuple(rels)
    name = name or f"alg{next(_anon)}"

    layers = _paths_by_length(quiver, 1)
    for n_trunc in range(2, length_cap + 2):
        layers = _paths_by_length(quiver, n_trunc - 1)
        result = _reduce(quiver, p, rels_t, layers, n_trunc)
        if result is not None:
            basis, normal = result
            return BoundQuiverAlgebra(name, quiver, p, rels_t, basis, normal, n_trunc)
    raise NotAdmissible(f"paths of length {length_cap} survive; ideal is not admissible within the cap")


def _reduce(quiver, p, rels, layers, n_trunc):
    paths = [path for layer in layers for path in layer]
    strata: dict[tuple[str, str], list[Path]] = {}
    for path in paths:
        strata.setdefault((path.src, path.tgt), []).append(path)
    # ideal generators u·r·w truncated below length n_trunc
    gens: dict[tuple[str, str], list[dict[Path, int]]] = {}
    for rel in rels:
        s = quiver.arrow(rel[0][1][0]).src
        t = quiver.arrow(rel[0][1][-1]).tgt
        minlen = min(len(x) for _, x in rel)
        for u in paths:
            if u.tgt != s or u.length + minlen >= n_trunc:
                continue
            for w in paths:
                if w.src != t or u.length + minlen + w.length >= n_trunc:
                    continue
                vec = {}
                for c, x in rel:
                    full = u.arrows + x + w.arrows
                    if len(full) < n_trunc:
                        key = Path(u.src, w.tgt, full)
                        vec[key] = (vec.get(key, 0) + c) % p
                gens.setdefault((u.src, w.tgt), []).append(vec)
    basis: list[Path] = []
    normal: dict[Path, dict[Path, int]] = {}
    for key, stratum in strata.items():
        # longest paths first so they become pivots (rewritten to shorter ones)
        cols = sorted(stratum, key=lambda x: (-x.length, x.arrows))
        index = {c: i for i, c in enumerate(cols)}
        vecs = gens.get(key, [])
        mat = ff.zeros(len(vecs), len(cols))
        for i, vec in enumerate(vecs):
            for path, c in vec.items():
                mat[i, index[path]] = c
        red, r, pivots = ff.rref(mat, p) if len(vecs) else (mat, 0, [])
        piv_set = set(pivots)
        for path in stratum:
            if path.length == n_trunc - 1 and index[path] not in piv_set:
                return None
        free = [cols[i] for i in range(len(cols)) if i not in piv_set]
        basis.extend(free)
        for path in free:
            normal[path] = {path: 1}
        for row, pc in enumerate(pivots):
            normal[cols[pc]] = {
                cols[j]: (-int(red[row, j])) % p for j in range(len(cols)) if j not in piv_set and red[row, j]
            }
    order = {v: i for i, v in enumerate(quiver.vertices)}
    basis.sort(key=lambda x: (order[x.src], x.length, order[x.tgt], x.arrows))
    return tuple(basis), normal


def projective(alg: BoundQuiverAlgebra, vertex: str):
    """The indecomposable projective ``P(vertex)``: paths starting at ``vertex``."""
    from .rep import Representation

    vertex = str(vertex)
    if vertex not in alg.vertices:
        raise KeyError(f"unknown vertex {vertex!r}")
    spaces = {v: alg.basis_between(vertex, v) for v in alg.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        src, tgt = spaces[a.src], spaces[a.tgt]
        idx = {b: i for i, b in enumerate(tgt)}
        m = ff.zeros(len(tgt), len(src))
        step = Path(a.src, a.tgt, (a.name,))
        for j, b in enumerate(src):
            for q, c in alg.compose(b, step).items():
                m[idx[q], j] = c
        maps[a.name] = m
    return Representation(alg, {v: len(spaces[v]) for v in alg.vertices}, maps, label=f"P({vertex})")


def opposite(alg: BoundQuiverAlgebra, name: str | None = None) -> BoundQuiverAlgebra:
    rels = tuple(tuple((c, tuple(reversed(path))) for c, path in rel) for rel in alg.relations)
    nm = name or (alg.name[:-3] if alg.name.endswith("^op") else alg.name + "^op")
    return build_algebra(alg.quiver.opposite(), alg.char, rels, name=nm)


def algebra_from_json(obj: dict, length_cap: int = DEFAULT_LENGTH_CAP) -> BoundQuiverAlgebra:
    q = Quiver(tuple(obj["vertices"]), tuple((a["name"], a["src"], a["tgt"]) for a in obj["arrows"]))
    rels = [[(t["coeff"], tuple(t["path"])) for t in rel] for rel in obj.get("relations", [])]
    return build_algebra(q, obj["char"], rels, name=obj.get("name"), length_cap=length_cap)


def linear_tensor(gamma: BoundQuiverAlgebra, k: int, name: str | None = None) -> BoundQuiverAlgebra:
    """``Γ ⊗ k A_k`` for the linear quiver ``1 -> 2 -> ... -> k``.

    Its modules are chains ``X_1 -> ... -> X_k`` of Γ-modules, i.e. modules
    over the lower triangular matrix algebra ``T_k(Γ)``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    verts = [f"{v}@{i}" for i in range(1, k + 1) for v in gamma.vertices]
    arrows = []
    for i in range(1, k + 1):
        for a in gamma.quiver.arrows:
            arrows.append((f"{a.name}@{i}", f"{a.src}@{i}", f"{a.tgt}@{i}"))
        if i < k:
            for v in gamma.vertices:
                arrows.append((f"|{v}@{i}", f"{v}@{i}", f"{v}@{i + 1}"))
    rels = []
    m1 = gamma.char - 1
    for i in range(1, k + 1):
        for rel in gamma.relations:
            rels.append([(c, tuple(f"{x}@{i}" for x in path)) for c, path in rel])
        if i < k:
            for a in gamma.quiver.arrows:
                rels.append(
                    [
                        (1, (f"{a.name}@{i}", f"|{a.tgt}@{i}")),
                        (m1, (f"|{a.src}@{i}", f"{a.name}@{i + 1}")),
                    ]
                )
    q = Quiver(tuple(verts), tuple(arrows))
    return build_algebra(q, gamma.char, rels, name=name or f"T{k}({gamma.name})")


def is_nakayama(alg: BoundQuiverAlgebra) -> bool:
    q = alg.quiver
    return all(len(q.out_arrows(v)) <= 1 and len(q.in_arrows(v)) <= 1 for v in q.vertices)


# corpus algebras ---------------------------------------------------------


def a2_algebra(p: int = ff.DEFAULT_CHAR) -> BoundQuiverAlgebra:
    """The path algebra of ``1 -a-> 2``."""
    return build_algebra(Quiver(("1", "2"), (("a", "1", "2"),)), p, name="A2")


def loop_algebra(p: int = ff.DEFAULT_CHAR) -> BoundQuiverAlgebra:
    """``k[a]/(a^2)``: one vertex, one loop squaring to zero."""
    return build_algebra(Quiver(("1",), (("a", "1", "1"),)), p, [[(1, ("a", "a"))]], name="L2")


def a3_algebra(p: int = ff.DEFAULT_CHAR) -> BoundQuiverAlgebra:
    """Linear ``1 -a-> 2 -b-> 3`` with ``a·b = 0`` (radical square zero)."""
    q = Quiver(("1", "2", "3"), (("a", "1", "2"), ("b", "2", "3")))
    return build_algebra(q, p, [[(1, ("a", "b"))]], name="A3r")


def field_algebra(p: int = ff.DEFAULT_CHAR) -> BoundQuiverAlgebra:
    """The ground field as a one-vertex algebra (vector spaces)."""
    return build_algebra(Quiver(("0",), ()), p, name="k")


def free_loop_quiver() -> Quiver:
    return Quiver(("1",), (("a", "1", "1"),))
