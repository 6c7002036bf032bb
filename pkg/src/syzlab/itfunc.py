"""Igusa-Todorov functions and syzygy-finiteness search.

Syzygies act on the free abelian group spanned by non-projective
indecomposable classes.  Orbits of that action are explored with an
iso-class registry; once the orbit of a module closes the action is a finite
integer matrix and Φ, Ψ and projective dimensions are read off exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import ff
from .decomp import Certainty, IsoClassRegistry, decompose
from .rep import Representation, direct_sum, is_projective, syzygy, zero_rep

DEPTH_CAP = int(os.environ.get("SYZLAB_DEPTH_CAP", 16))
CLASS_CAP = int(os.environ.get("SYZLAB_CLASS_CAP", 512))


class Status(Enum):
    DECIDED = "DECIDED"
    UNDECIDED = "UNDECIDED"


class SyzygyGraph:
    """Cache of Ω on indecomposable classes over one algebra.

    ``edges[c]`` maps the non-projective summands of ``Ω c`` to multiplicities;
    ``projective_parts[c]`` does the same for projective summands.
    """

    def __init__(self, algebra, seed: int = 0, registry: IsoClassRegistry | None = None):
        self.algebra = algebra
        self.registry = registry or IsoClassRegistry(algebra, seed)
        self.seed = seed
        self.projective: dict[int, bool] = {}
        self.edges: dict[int, dict[int, int]] = {}
        self.projective_parts: dict[int, dict[int, int]] = {}
        self.certainty = Certainty.EXACT

    def classes_of(self, m: Representation) -> dict[int, int]:
        """Registry ids (with multiplicity) of the indecomposable summands of ``m``."""
        out: dict[int, int] = {}
        if m.is_zero():
            return out
        dec = decompose(m, self.seed)
        self.certainty = self.certainty & dec.certainty
        for s in dec.summands:
            entry = self.registry.register(s.module, s.certainty & dec.certainty, check=False)
            if entry.ident not in self.projective:
                self.projective[entry.ident] = is_projective(entry.module)
            out[entry.ident] = out.get(entry.ident, 0) + s.multiplicity
        return out

    def module(self, ident: int) -> Representation:
        return self.registry[ident].module

    def is_projective(self, ident: int) -> bool:
        return self.projective[ident]

    def expand(self, ident: int) -> dict[int, int]:
        if ident not in self.edges:
            if self.projective[ident]:
                self.edges[ident], self.projective_parts[ident] = {}, {}
            else:
                parts = self.classes_of(syzygy(self.module(ident)))
                self.edges[ident] = {c: k for c, k in parts.items() if not self.projective[c]}
                self.projective_parts[ident] = {c: k for c, k in parts.items() if self.projective[c]}
        return self.edges[ident]


@dataclass
class SyzygyOrbit:
    graph: SyzygyGraph
    roots: list[int]
    ids: list[int]
    depth: int
    closed: bool

    @property
    def omega_edges(self) -> dict[int, dict[int, int]]:
        return {c: self.graph.edges[c] for c in self.ids if c in self.graph.edges}

    def matrix(self) -> np.ndarray:
        """Integer matrix of the projective-killing syzygy action on the orbit."""
        if not self.closed:
            raise ValueError("orbit is not closed")
        idx = {c: i for i, c in enumerate(self.ids)}
        m = np.zeros((len(self.ids), len(self.ids)), dtype=object)
        for c in self.ids:
            for d, k in self.graph.edges[c].items():
                m[idx[d], idx[c]] += k
        return m


def syzygy_orbit(graph: SyzygyGraph, roots, depth_cap: int = DEPTH_CAP, class_cap: int = CLASS_CAP) -> SyzygyOrbit:
    """Breadth-first closure of ``roots`` (non-projective class ids) under Ω.

    At most ``depth_cap`` expansion rounds are run; the orbit is closed when a
    round discovers nothing new.
    """
    roots = [c for c in dict.fromkeys(roots) if not graph.is_projective(c)]
    seen = list(roots)
    seen_set = set(seen)
    frontier = list(roots)
    depth = 0
    while frontier:
        if depth >= depth_cap or len(seen) > class_cap:
            return SyzygyOrbit(graph, roots, seen, depth, False)
        nxt = []
        for c in frontier:
            for d in graph.expand(c):
                if d not in seen_set:
                    seen_set.add(d)
                    seen.append(d)
                    nxt.append(d)
        frontier = nxt
        depth += 1
    return SyzygyOrbit(graph, roots, seen, depth, len(seen) <= class_cap)


def class_pd(orbit: SyzygyOrbit) -> dict[int, int | None]:
    """Projective dimension of every class of a closed orbit (``None`` = infinite)."""
    edges = orbit.graph.edges
    out: dict[int, int | None] = {}
    state: dict[int, int] = {}

    def visit(c):
        if c in out:
            return out[c]
        if state.get(c) == 1:
            return None
        state[c] = 1
        best = 0
        for d in edges[c]:
            v = visit(d)
            if v is None:
                best = None
                break
            best = max(best, v)
        state[c] = 2
        # memoise only settled values; cycle members resolve to None on exit
        out[c] = None if best is None else best + 1
        return out[c]

    for c in orbit.ids:
        visit(c)
    # a class reaching a cycle is infinite even if visited from inside the cycle first
    changed = True
    while changed:
        changed = False
        for c in orbit.ids:
            if out[c] is not None and any(out[d] is None for d in edges[c]):
                out[c] = None
                changed = True
    return out


@dataclass
class ITReport:
    status: Status
    phi: int | None
    psi: int | None
    trace: list[int] = field(default_factory=list)
    pd_table: dict[int, int | None] = field(default_factory=dict)
    classes: dict[int, int] = field(default_factory=dict)
    certainty: Certainty = Certainty.EXACT
    depth: int = 0
    depth_cap: int = DEPTH_CAP
    class_cap: int = CLASS_CAP

    @property
    def decided(self) -> bool:
        return self.status is Status.DECIDED

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "phi": self.phi,
            "psi": self.psi,
            "rank_trace": list(self.trace),
            "classes": {str(k): v for k, v in sorted(self.classes.items())},
            "pd_table": {str(k): v for k, v in sorted(self.pd_table.items())},
            "certainty": self.certainty.value,
            "depth": self.depth,
            "depth_cap": self.depth_cap,
            "class_cap": self.class_cap,
        }


def _graph_for(m: Representation, graph: SyzygyGraph | None, seed: int) -> SyzygyGraph:
    if graph is None:
        return SyzygyGraph(m.algebra, seed)
    if graph.algebra is not m.algebra:
        raise ValueError("graph lives over a different algebra")
    return graph


def it_report(
    m: Representation,
    depth_cap: int = DEPTH_CAP,
    class_cap: int = CLASS_CAP,
    graph: SyzygyGraph | None = None,
    seed: int = 0,
) -> ITReport:
    """Φ(m) and Ψ(m) together with the rank trace and the pd of each class."""
    graph = _graph_for(m, graph, seed)
    classes = graph.classes_of(m)
    gens = [c for c in classes if not graph.is_projective(c)]
    orbit = syzygy_orbit(graph, gens, depth_cap, class_cap)
    cert = graph.certainty
    if not orbit.closed:
        return ITReport(Status.UNDECIDED, None, None, classes=classes, certainty=cert,
                        depth=orbit.depth, depth_cap=depth_cap, class_cap=class_cap)
    n = len(orbit.ids)
    mat = orbit.matrix()
    idx = {c: i for i, c in enumerate(orbit.ids)}
    cur = np.zeros((n, len(gens)), dtype=object)
    for j, c in enumerate(gens):
        cur[idx[c], j] = 1
    # L^k applied to the generators; ranks stabilise once k reaches n
    trace = []
    supports = []
    for _ in range(n + 2):
        trace.append(ff.int_rank(cur.tolist()) if cur.size else 0)
        supports.append({orbit.ids[i] for i in range(n) if any(cur[i, j] != 0 for j in range(cur.shape[1]))})
        cur = mat.dot(cur) if n else cur
    stable = trace[n]
    phi = next(k for k, r in enumerate(trace) if r == stable)
    pds = class_pd(orbit)
    finite = [pds[c] for c in supports[phi] if pds[c] is not None]
    psi = phi + max(finite, default=0)
    return ITReport(Status.DECIDED, phi, psi, trace, pds, classes, cert, orbit.depth, depth_cap, class_cap)


def phi(m: Representation, depth_cap: int = DEPTH_CAP, **kw) -> ITReport:
    return it_report(m, depth_cap, **kw)


def psi(m: Representation, depth_cap: int = DEPTH_CAP, **kw) -> ITReport:
    return it_report(m, depth_cap, **kw)


def projective_dimension(m: Representation, depth_cap: int = DEPTH_CAP, graph: SyzygyGraph | None = None,
                         seed: int = 0) -> int | None | Status:
    """Exact pd from the closed orbit; ``Status.UNDECIDED`` when the orbit stays open."""
    graph = _graph_for(m, graph, seed)
    classes = graph.classes_of(m)
    gens = [c for c in classes if not graph.is_projective(c)]
    if not gens:
        return 0
    orbit = syzygy_orbit(graph, gens, depth_cap)
    if not orbit.closed:
        return Status.UNDECIDED
    pds = class_pd(orbit)
    vals = [pds[c] for c in gens]
    return None if any(v is None for v in vals) else max(vals)


# syzygy finiteness -------------------------------------------------------


class Verdict(Enum):
    CONFIRMED = "CONFIRMED"
    UNDECIDED = "UNDECIDED"


@dataclass
class LevelReport:
    n: int
    classes: list[int]
    closure: list[int]
    closed: bool


@dataclass
class FinitenessReport:
    verdict: Verdict
    level: int | None
    representative: Representation | None
    classes: list[int]
    levels: list[LevelReport]
    certainty: Certainty
    graph: SyzygyGraph
    depth_cap: int
    class_cap: int

    @property
    def confirmed(self) -> bool:
        return self.verdict is Verdict.CONFIRMED

    def to_json(self) -> dict:
        reg = self.graph.registry
        return {
            "verdict": self.verdict.value,
            "level": self.level,
            "classes": [{"id": c, "dim_vector": list(reg[c].dim_vector),
                         "projective": self.graph.is_projective(c)} for c in self.classes],
            "levels": [{"n": lv.n, "classes": lv.classes, "closure": lv.closure, "closed": lv.closed}
                       for lv in self.levels],
            "certainty": self.certainty.value,
            "depth_cap": self.depth_cap,
            "class_cap": self.class_cap,
        }


def syzygy_finiteness_search(
    family: list[Representation],
    n_max: int = 4,
    depth_cap: int = DEPTH_CAP,
    class_cap: int = CLASS_CAP,
    graph: SyzygyGraph | None = None,
    seed: int = 0,
) -> FinitenessReport:
    """Least ``n <= n_max`` for which the indecomposable classes of ``Ω^k F``
    (``k >= n``, ``F`` in the add-closure of ``family``) form a finite set.

    Level ``n`` classes are the summands of ``Ω^n`` of the family; the level is
    confirmed once the Ω-orbit of those classes closes within the caps.
    """
    if not family:
        raise ValueError("empty family")
    alg = family[0].algebra
    graph = graph if graph is not None else SyzygyGraph(alg, seed)
    level: dict[int, int] = {}
    for x in family:
        for c in graph.classes_of(x):
            level.setdefault(c, 0)
    levels = []
    current = list(level)
    for n in range(n_max + 1):
        orbit = syzygy_orbit(graph, current, depth_cap, class_cap)
        proj = [c for c in current if graph.is_projective(c)]
        proj += [d for c in orbit.ids if c in graph.projective_parts for d in graph.projective_parts[c]]
        closure = list(dict.fromkeys(proj + orbit.ids))
        lv = LevelReport(n, list(current), closure, orbit.closed and len(closure) <= class_cap)
        levels.append(lv)
        if lv.closed:
            rep = direct_sum(*[graph.module(c) for c in closure]) if closure else zero_rep(alg)
            return FinitenessReport(Verdict.CONFIRMED, n, rep, closure, levels, graph.certainty, graph,
                                    depth_cap, class_cap)
        nxt: dict[int, None] = {}
        for c in current:
            if graph.is_projective(c):
                continue
            for d in graph.expand(c):
                nxt[d] = None
            for d in graph.projective_parts[c]:
                nxt[d] = None
        current = list(nxt)
    return FinitenessReport(Verdict.UNDECIDED, None, None, [], levels, graph.certainty, graph, depth_cap, class_cap)


@dataclass
class BoundRow:
    sample: str
    phi: int | None
    bound: int
    holds: bool


@dataclass
class BoundReport:
    holds: bool
    phi_m: int
    n: int
    rows: list[BoundRow]
    violations: list[BoundRow]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "phi_M": self.phi_m,
            "n": self.n,
            "rows": [vars(r) for r in self.rows],
        }


class InconsistentBound(AssertionError):
    pass


def phi_dim_bound(alg, family, n: int, sample: list[Representation], depth_cap: int = DEPTH_CAP,
                  search: FinitenessReport | None = None, strict: bool = False) -> BoundReport:
    """Check ``Φ(X) <= Φ(M) + n`` for each sample ``X``, ``M`` the level-``n`` representative."""
    search = search or syzygy_finiteness_search(list(family), n_max=n, depth_cap=depth_cap)
    if not search.confirmed or search.level > n:
        raise ValueError(f"syzygy finiteness not confirmed at level {n}")
    graph = search.graph
    if graph.algebra is not alg:
        raise ValueError("family lives over a different algebra")
    pm = it_report(search.representative, depth_cap, graph=graph)
    if not pm.decided:
        raise ValueError("Φ of the representative is undecided")
    rows = []
    for x in sample:
        r = it_report(x, depth_cap, graph=graph)
        ok = r.decided and r.phi <= pm.phi + n
        rows.append(BoundRow(x.label or str(x.dim_vector()), r.phi, pm.phi + n, ok))
    bad = [r for r in rows if not r.holds]
    if bad and strict:
        raise InconsistentBound(f"Φ bound violated for {[r.sample for r in bad]}")
    return BoundReport(not bad, pm.phi, n, rows, bad)
