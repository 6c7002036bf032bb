"""Lower triangular matrix algebras ``[[T, 0], [M, U]]`` and their modules.

A module is a triple ``(A, B, f)`` with ``A`` a T-module, ``B`` a U-module and
``f: M ⊗_T A -> B`` a U-morphism.  Internally a triple is stored as a
representation of an auxiliary quiver: the quivers of T and U side by side,
plus one arrow ``M{i}: T:v(i) -> U:w(i)`` per basis element ``m_i`` of the
bimodule carrying ``a ↦ f(m_i ⊗ a)``.  Morphisms, kernels, Hom spaces and
decompositions of triples are then the generic representation routines;
only the projective cover is specific to triples.

Conventions: ``m_i`` has left U-vertex ``w(i)`` and right T-vertex ``v(i)``.
A U-arrow ``b`` acts by ``left[b]`` (``m_i ↦ b·m_i``), a T-arrow ``a`` by
``right[a]`` (column ``i`` holds ``m_i·a``, nonzero only when ``v(i) = tgt a``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from types import SimpleNamespace

import numpy as np

from . import ff
from .quiver import BoundQuiverAlgebra, Path, Quiver, linear_tensor, opposite
from .rep import (
    Morphism,
    Representation,
    ShortExactSequence,
    direct_sum,
    direct_sum_data,
    generators_cover,
    hom_space,
    identity,
    is_projective,
    kernel,
    minimal_resolution,
    projective_cover,
    syzygy,
    top_generators,
    zero_rep,
)


class ProjectivityHypothesisFailed(ValueError):
    pass


class BimoduleError(ValueError):
    pass


def _arrow_path(a) -> Path:
    return Path(a.src, a.tgt, (a.name,))


@dataclass(frozen=True, eq=False)
class Bimodule:
    """A U-T-bimodule with a graded basis."""

    U: BoundQuiverAlgebra
    T: BoundQuiverAlgebra
    left_vertex: tuple[str, ...]
    right_vertex: tuple[str, ...]
    left: dict
    right: dict
    name: str = "M"

    def __post_init__(self):
        n = len(self.left_vertex)
        if len(self.right_vertex) != n:
            raise BimoduleError("left and right gradings have different lengths")
        if self.U.char != self.T.char:
            raise BimoduleError("characteristics of U and T differ")
        p = self.U.char
        if set(self.left_vertex) - set(self.U.vertices) or set(self.right_vertex) - set(self.T.vertices):
            raise BimoduleError("grading uses unknown vertices")
        left = {b.name: ff.asmat(self.left.get(b.name, ff.zeros(n, n)), p, (n, n)) for b in self.U.quiver.arrows}
        right = {a.name: ff.asmat(self.right.get(a.name, ff.zeros(n, n)), p, (n, n)) for a in self.T.quiver.arrows}
        if set(self.left) - set(left) or set(self.right) - set(right):
            raise BimoduleError("action given for unknown arrows")
        w, v = self.left_vertex, self.right_vertex
        for b in self.U.quiver.arrows:
            for j, i in zip(*np.nonzero(left[b.name])):
                if w[i] != b.src or w[j] != b.tgt or v[i] != v[j]:
                    raise BimoduleError(f"left action of {b.name} does not respect the grading")
        for a in self.T.quiver.arrows:
            for j, i in zip(*np.nonzero(right[a.name])):
                if v[i] != a.tgt or v[j] != a.src or w[i] != w[j]:
                    raise BimoduleError(f"right action of {a.name} does not respect the grading")
        for lb in left.values():
            for ra in right.values():
                if np.any((ff.mul(lb, ra, p) - ff.mul(ra, lb, p)) % p):
                    raise BimoduleError("left and right actions do not commute")
        object.__setattr__(self, "left_vertex", tuple(w))
        object.__setattr__(self, "right_vertex", tuple(v))
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        # relations are checked by building both one-sided modules
        self.left_module
        self.right_module

    @property
    def dim(self) -> int:
        return len(self.left_vertex)

    @property
    def p(self) -> int:
        return self.U.char

    def indices(self, w: str | None = None, v: str | None = None) -> list[int]:
        return [i for i in range(self.dim)
                if (w is None or self.left_vertex[i] == w) and (v is None or self.right_vertex[i] == v)]

    @cached_property
    def left_module(self) -> Representation:
        """``M`` as a U-module."""
        idx = {w: self.indices(w=w) for w in self.U.vertices}
        maps = {b.name: self.left[b.name][np.ix_(idx[b.tgt], idx[b.src])] for b in self.U.quiver.arrows}
        return Representation(self.U, {w: len(i) for w, i in idx.items()}, maps, label=self.name)

    @cached_property
    def t_opposite(self) -> BoundQuiverAlgebra:
        return opposite(self.T)

    @cached_property
    def right_module(self) -> Representation:
        """``M`` as a T-op-module: the opposite of arrow ``a`` maps ``M e_tgt(a) -> M e_src(a)``."""
        idx = {v: self.indices(v=v) for v in self.T.vertices}
        maps = {a.name: self.right[a.name][np.ix_(idx[a.src], idx[a.tgt])] for a in self.T.quiver.arrows}
        return Representation(self.t_opposite, {v: len(i) for v, i in idx.items()}, maps, label=self.name + "^op")

    def is_left_projective(self) -> bool:
        return _all_projective(self.left_module)

    def is_right_projective(self) -> bool:
        return _all_projective(self.right_module)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.dim,
            "left_vertex": list(self.left_vertex),
            "right_vertex": list(self.right_vertex),
            "left": {k: m.tolist() for k, m in self.left.items()},
            "right": {k: m.tolist() for k, m in self.right.items()},
        }

    @classmethod
    def from_json(cls, obj: dict, U, T) -> "Bimodule":
        return cls(U, T, tuple(obj["left_vertex"]), tuple(obj["right_vertex"]),
                   {k: np.array(m, dtype=np.int64) for k, m in obj.get("left", {}).items()},
                   {k: np.array(m, dtype=np.int64) for k, m in obj.get("right", {}).items()},
                   obj.get("name", "M"))


def _all_projective(m: Representation) -> bool:
    from .decomp import decompose

    return all(is_projective(s.module) for s in decompose(m).summands)


def regular_bimodule(gamma: BoundQuiverAlgebra) -> Bimodule:
    """``Γ`` as a bimodule over itself."""
    return column_bimodule(gamma, gamma, 1)


def column_bimodule(gamma: BoundQuiverAlgebra, U: BoundQuiverAlgebra, k: int) -> Bimodule:
    """The ``k x 1`` column of copies of ``Γ``, a ``T_k(Γ)``-``Γ``-bimodule.

    ``U`` is ``Γ`` when ``k = 1`` and ``linear_tensor(Γ, k)`` otherwise.
    """
    basis = [(p, i) for i in range(1, k + 1) for p in gamma.basis]
    index = {b: n for n, b in enumerate(basis)}
    tag = (lambda v, i: v) if k == 1 else (lambda v, i: f"{v}@{i}")
    n = len(basis)
    left = {b.name: ff.zeros(n, n) for b in U.quiver.arrows}
    right = {a.name: ff.zeros(n, n) for a in gamma.quiver.arrows}
    for (p, i), col in index.items():
        for b in gamma.quiver.arrows:
            if b.src != p.tgt:
                continue
            for q, c in gamma.compose(p, _arrow_path(b)).items():
                left[b.name if k == 1 else f"{b.name}@{i}"][index[(q, i)], col] = c
        for a in gamma.quiver.arrows:
            if a.tgt != p.src:
                continue
            for q, c in gamma.compose(_arrow_path(a), p).items():
                right[a.name][index[(q, i)], col] = c
        if i < k:
            left[f"|{p.tgt}@{i}"][index[(p, i + 1)], col] = 1
    return Bimodule(U, gamma, tuple(tag(p.tgt, i) for p, i in basis), tuple(p.src for p, i in basis),
                    left, right, name=f"Γ^{k}" if k > 1 else "Γ")


# tensor product ------------------------------------------------------------


@dataclass
class Tensor:
    """``M ⊗_T A`` with its presentation ``q_w: G_w -> (M ⊗ A)_w``.

    ``G_w = ⊕_{i : w(i) = w} A_{v(i)}``; ``blocks[w]`` lists ``(i, offset, size)``.
    """

    module: Representation
    source: Representation
    blocks: dict
    q: dict
    s: dict


def tensor_left(M: Bimodule, A: Representation) -> Tensor:
    if A.algebra is not M.T:
        raise ValueError("A must be a module over the right algebra of M")
    p = M.p
    blocks, gdim, where = {}, {}, {}
    for w in M.U.vertices:
        off = 0
        blocks[w] = []
        for i in M.indices(w=w):
            size = A.dims[M.right_vertex[i]]
            blocks[w].append((i, off, size))
            where[i] = (off, size)
            off += size
        gdim[w] = off
    q, s = {}, {}
    for w in M.U.vertices:
        rels = []
        for a in M.T.quiver.arrows:
            ra = M.right[a.name]
            da = A.dims[a.src]
            if da == 0:
                continue
            for i, off, size in blocks[w]:
                if M.right_vertex[i] != a.tgt:
                    continue
                # (m_i · a) ⊗ x - m_i ⊗ (a x) for x in A_src(a)
                r = ff.zeros(gdim[w], da)
                for j in np.nonzero(ra[:, i])[0]:
                    oj, sj = where[j]
                    r[oj : oj + sj, :] += ra[j, i] * ff.eye(sj)
                r[off : off + size, :] -= A.maps[a.name]
                rels.append(r % p)
        sub = ff.colspace(np.hstack(rels), p) if rels else ff.zeros(gdim[w], 0)
        q[w], s[w] = ff.quotient_map(sub, p)
    maps = {}
    for b in M.U.quiver.arrows:
        lb = M.left[b.name]
        big = ff.zeros(gdim[b.tgt], gdim[b.src])
        for i, off, size in blocks[b.src]:
            for j in np.nonzero(lb[:, i])[0]:
                oj, _ = where[j]
                big[oj : oj + size, off : off + size] = lb[j, i] * ff.eye(size)
        maps[b.name] = ff.mul(ff.mul(q[b.tgt], big, p), s[b.src], p)
    dims = {w: q[w].shape[0] for w in M.U.vertices}
    mod = Representation(M.U, dims, maps, label=f"{M.name}⊗{A.label}" if A.label else "")
    return Tensor(mod, A, blocks, q, s)


def tensor_morphism(M: Bimodule, alpha: Morphism, src: Tensor | None = None, tgt: Tensor | None = None) -> Morphism:
    """``M ⊗ alpha`` between the tensor products of its source and target."""
    src = src or tensor_left(M, alpha.source)
    tgt = tgt or tensor_left(M, alpha.target)
    p = M.p
    maps = {}
    for w in M.U.vertices:
        d = ff.block_diag([alpha.maps[M.right_vertex[i]] for i, _, _ in src.blocks[w]])
        if not src.blocks[w]:
            d = ff.zeros(0, 0)
        maps[w] = ff.mul(ff.mul(tgt.q[w], d, p), src.s[w], p)
    return Morphism(src.module, tgt.module, maps)


# the triangular algebra ----------------------------------------------------


class TriangularAlgebra:
    """``Λ = [[T, 0], [M, U]]``; acts as the ambient algebra of flattened triples."""

    def __init__(self, T: BoundQuiverAlgebra, U: BoundQuiverAlgebra, M: Bimodule, name: str | None = None):
        if M.T is not T or M.U is not U:
            raise ValueError("bimodule is not over (U, T)")
        if T.char != U.char:
            raise ValueError("characteristics of T and U differ")
        self.T, self.U, self.M = T, U, M
        self.char = T.char
        self.name = name or f"[[{T.name},0],[{M.name},{U.name}]]"
        verts = [f"T:{v}" for v in T.vertices] + [f"U:{w}" for w in U.vertices]
        arrows = [(f"T:{a.name}", f"T:{a.src}", f"T:{a.tgt}") for a in T.quiver.arrows]
        arrows += [(f"U:{b.name}", f"U:{b.src}", f"U:{b.tgt}") for b in U.quiver.arrows]
        arrows += [(f"M{i}", f"T:{M.right_vertex[i]}", f"U:{M.left_vertex[i]}") for i in range(M.dim)]
        self.quiver = Quiver(tuple(verts), tuple(arrows))
        self._tensors: dict = {}

    def __repr__(self):
        return f"TriangularAlgebra({self.name!r}, dim={self.total_dimension})"

    @property
    def p(self) -> int:
        return self.char

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def total_dimension(self) -> int:
        return self.T.total_dimension + self.U.total_dimension + self.M.dim

    def tensor(self, A: Representation) -> Tensor:
        t = self._tensors.get(id(A))
        if t is None or t.source is not A:
            t = tensor_left(self.M, A)
            self._tensors[id(A)] = t
        return t

    # flattening

    def flatten(self, A: Representation, B: Representation, f: Morphism | dict | None, label: str = "") -> Representation:
        t = self.tensor(A)
        fmaps = f.maps if isinstance(f, Morphism) else (f or {})
        if isinstance(f, Morphism) and (f.source is not t.module or f.target is not B):
            # accept any morphism with the right shapes
            f = Morphism(t.module, B, f.maps)
        dims = {f"T:{v}": A.dims[v] for v in self.T.vertices}
        dims.update({f"U:{w}": B.dims[w] for w in self.U.vertices})
        maps = {f"T:{a}": m for a, m in A.maps.items()}
        maps.update({f"U:{b}": m for b, m in B.maps.items()})
        p = self.char
        for w in self.U.vertices:
            fw = fmaps.get(w)
            if fw is None:
                fw = ff.zeros(B.dims[w], t.module.dims[w])
            fw = np.asarray(fw, dtype=np.int64) % p
            if fw.shape != (B.dims[w], t.module.dims[w]):
                raise ValueError(f"f has shape {fw.shape} at {w}")
            fq = ff.mul(fw, t.q[w], p)
            for i, off, size in t.blocks[w]:
                maps[f"M{i}"] = fq[:, off : off + size]
        return Representation(self, dims, maps, label=label)

    def t_part(self, x: Representation) -> Representation:
        return Representation(self.T, {v: x.dims[f"T:{v}"] for v in self.T.vertices},
                              {a.name: x.maps[f"T:{a.name}"] for a in self.T.quiver.arrows})

    def u_part(self, x: Representation) -> Representation:
        return Representation(self.U, {w: x.dims[f"U:{w}"] for w in self.U.vertices},
                              {b.name: x.maps[f"U:{b.name}"] for b in self.U.quiver.arrows})

    def structure_map(self, x: Representation, A: Representation, B: Representation) -> Morphism:
        t = self.tensor(A)
        p = self.char
        maps = {}
        for w in self.U.vertices:
            blocks = [x.maps[f"M{i}"] for i, _, _ in t.blocks[w]]
            big = np.hstack(blocks) if blocks else ff.zeros(B.dims[w], 0)
            maps[w] = ff.mul(big, t.s[w], p)
        return Morphism(t.module, B, maps)

    # ambient-algebra hooks

    def relation_failures(self, rep) -> list[str]:
        p = self.char
        bad = []
        for alg, tag in ((self.T, "T"), (self.U, "U")):
            view = SimpleNamespace(
                dims={v: rep.dims[f"{tag}:{v}"] for v in alg.vertices},
                maps={a.name: rep.maps[f"{tag}:{a.name}"] for a in alg.quiver.arrows},
                p=p,
                quiver=alg.quiver,
            )
            bad += [f"{tag}: {msg}" for msg in alg.relation_failures(view)]
        M = self.M
        for a in self.T.quiver.arrows:
            ra = M.right[a.name]
            for i in M.indices(v=a.tgt):
                lhs = ff.mul(rep.maps[f"M{i}"], rep.maps[f"T:{a.name}"], p)
                rhs = ff.zeros(*lhs.shape)
                for j in np.nonzero(ra[:, i])[0]:
                    rhs = rhs + ra[j, i] * rep.maps[f"M{j}"]
                if np.any((lhs - rhs) % p):
                    bad.append(f"structure map is not balanced along {a.name} at m{i}")
        for b in self.U.quiver.arrows:
            lb = M.left[b.name]
            for i in M.indices(w=b.src):
                lhs = ff.mul(rep.maps[f"U:{b.name}"], rep.maps[f"M{i}"], p)
                rhs = ff.zeros(*lhs.shape)
                for j in np.nonzero(lb[:, i])[0]:
                    rhs = rhs + lb[j, i] * rep.maps[f"M{j}"]
                if np.any((lhs - rhs) % p):
                    bad.append(f"structure map is not U-linear along {b.name} at m{i}")
        return bad

    def projective_cover(self, rep: Representation):
        cov, epi = triple_projective_cover(TripleModule(self, rep))
        return cov.flat, epi.flat

    def indecomposable_projectives(self) -> list["TripleModule"]:
        from .quiver import projective

        out = []
        for v in self.T.vertices:
            pv = projective(self.T, v)
            t = self.tensor(pv)
            out.append(triple(self, pv, t.module, identity(t.module), label=f"({pv.label},M⊗{pv.label},1)"))
        for w in self.U.vertices:
            out.append(embed_under(self, projective(self.U, w)))
        return out

    def check_hypothesis(self) -> None:
        if not self.M.is_left_projective():
            raise ProjectivityHypothesisFailed("M is not projective as a left U-module")
        if not self.M.is_right_projective():
            raise ProjectivityHypothesisFailed("M is not projective as a right T-module")

    @cached_property
    def hypothesis_holds(self) -> bool:
        try:
            self.check_hypothesis()
        except ProjectivityHypothesisFailed:
            return False
        return True


# triples -------------------------------------------------------------------


@dataclass(eq=False)
class TripleModule:
    algebra: TriangularAlgebra
    flat: Representation

    def __post_init__(self):
        if self.flat.algebra is not self.algebra:
            raise ValueError("flattened module lives over a different algebra")

    @cached_property
    def A(self) -> Representation:
        return self.algebra.t_part(self.flat)

    @cached_property
    def B(self) -> Representation:
        return self.algebra.u_part(self.flat)

    @cached_property
    def f(self) -> Morphism:
        return self.algebra.structure_map(self.flat, self.A, self.B)

    @property
    def label(self) -> str:
        return self.flat.label

    @property
    def dim(self) -> int:
        return self.flat.dim

    def dim_vector(self):
        return self.flat.dim_vector()

    def is_zero(self) -> bool:
        return self.flat.is_zero()

    def image_in_radical(self) -> bool:
        from .rep import radical_spaces

        rad = radical_spaces(self.B)
        p = self.algebra.char
        for w, fw in self.f.maps.items():
            if fw.size and np.any(fw):
                if rad[w].shape[1] == 0 or ff.solve(rad[w], fw, p) is None:
                    return False
        return True

    def f_factors_through_projective(self) -> bool:
        """Whether ``f`` lifts along the projective cover of ``B``."""
        from .rep import cover, factor_through

        if self.f.is_zero():
            return True
        _, epi = cover(self.B)
        return factor_through(epi, self.f) is not None

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json(), "f": {w: m.tolist() for w, m in self.f.maps.items()},
                "label": self.label}

    def __repr__(self):
        return f"Triple({self.label or '?'}, A={self.A.dim_vector()}, B={self.B.dim_vector()})"


@dataclass(eq=False)
class TripleMorphism:
    source: TripleModule
    target: TripleModule
    flat: Morphism

    @property
    def alpha(self) -> Morphism:
        T = self.source.algebra.T
        return Morphism(self.source.A, self.target.A, {v: self.flat.maps[f"T:{v}"] for v in T.vertices})

    @property
    def beta(self) -> Morphism:
        U = self.source.algebra.U
        return Morphism(self.source.B, self.target.B, {w: self.flat.maps[f"U:{w}"] for w in U.vertices})

    def square_commutes(self) -> bool:
        alg = self.source.algebra
        p = alg.char
        ta, tb = alg.tensor(self.source.A), alg.tensor(self.target.A)
        mal = tensor_morphism(alg.M, self.alpha, ta, tb)
        for w in alg.U.vertices:
            lhs = ff.mul(self.target.f.maps[w], mal.maps[w], p)
            rhs = ff.mul(self.beta.maps[w], self.source.f.maps[w], p)
            if np.any((lhs - rhs) % p):
                return False
        return True


def triple(alg: TriangularAlgebra, A: Representation, B: Representation, f=None, label: str = "") -> TripleModule:
    return TripleModule(alg, alg.flatten(A, B, f, label))


def triple_direct_sum(*xs: TripleModule) -> TripleModule:
    if not xs:
        raise ValueError("need at least one triple")
    return TripleModule(xs[0].algebra, direct_sum(*[x.flat for x in xs]))


def embed_bar(alg: TriangularAlgebra, A: Representation) -> TripleModule:
    """``(A, 0, 0)``."""
    return triple(alg, A, zero_rep(alg.U), None, label=f"({A.label},0,0)" if A.label else "")


def embed_under(alg: TriangularAlgebra, B: Representation) -> TripleModule:
    """``(0, B, 0)``."""
    return triple(alg, zero_rep(alg.T), B, None, label=f"(0,{B.label},0)" if B.label else "")


def canonical_ses(x: TripleModule) -> ShortExactSequence:
    """``0 -> (0, B, 0) -> (A, B, f) -> (A, 0, 0) -> 0``."""
    alg = x.algebra
    under = embed_under(alg, x.B)
    bar = embed_bar(alg, x.A)
    mono = {v: (ff.eye(d) if v.startswith("U:") else ff.zeros(d, 0)) for v, d in x.flat.dims.items()}
    epi = {v: (ff.eye(d) if v.startswith("T:") else ff.zeros(0, d)) for v, d in x.flat.dims.items()}
    seq = ShortExactSequence(Morphism(under.flat, x.flat, mono), Morphism(x.flat, bar.flat, epi))
    if not seq.is_exact():
        raise AssertionError("; ".join(seq.failures()))
    return seq


def triple_projective_cover(x: TripleModule) -> tuple[TripleModule, TripleMorphism]:
    """``(P_A, M⊗P_A, 1) ⊕ (0, Q_0, 0) -> (A, B, f)``.

    ``P_A -> A`` is the minimal cover and ``Q_0`` covers a complement of
    ``rad B + im f`` in ``B``.
    """
    alg = x.algebra
    A, B, f = x.A, x.B, x.f
    p = alg.char
    pa, pi = projective_cover(A)
    tp = alg.tensor(pa)
    imf = {w: ff.colspace(m, p) for w, m in f.maps.items()}
    q0, gamma = generators_cover(B, top_generators(B, imf))
    proj_part = alg.flatten(pa, tp.module, identity(tp.module))
    free_part = alg.flatten(zero_rep(alg.T), q0, None)
    ds = direct_sum_data([proj_part, free_part])
    m_pi = tensor_morphism(alg.M, pi, tp, alg.tensor(A))
    maps = {}
    for v in alg.T.vertices:
        maps[f"T:{v}"] = pi.maps[v]
    for w in alg.U.vertices:
        maps[f"U:{w}"] = np.hstack([ff.mul(f.maps[w], m_pi.maps[w], p), gamma.maps[w]])
    epi = Morphism(ds.module, x.flat, maps)
    if not epi.is_epi():
        raise AssertionError("triple cover is not surjective")
    cov = TripleModule(alg, ds.module)
    return cov, TripleMorphism(cov, x, epi)


def triple_syzygy_direct(x: TripleModule, n: int = 1) -> TripleModule:
    """``Ω^n`` by iterated kernels of triple covers."""
    if n < 0:
        raise ValueError("n must be non-negative")
    for _ in range(n):
        if x.is_zero():
            break
        _, epi = triple_projective_cover(x)
        k, _ = kernel(epi.flat)
        x = TripleModule(x.algebra, k)
    return x


def triple_syzygy_formula(x: TripleModule, n: int = 1) -> TripleModule:
    """``(Ω^n A, M⊗P_{n-1}, M⊗i_n) ⊕ (0, Ω^n B, 0)`` from resolutions of ``A`` and ``B``.

    Requires ``M`` projective on both sides.
    """
    alg = x.algebra
    alg.check_hypothesis()
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return x
    i_n = _resolution_inclusion(x.A, n)
    omega_a, p_prev = i_n.source, i_n.target
    tp = alg.tensor(p_prev)
    mi = tensor_morphism(alg.M, i_n, alg.tensor(omega_a), tp)
    first = alg.flatten(omega_a, tp.module, mi)
    second = alg.flatten(zero_rep(alg.T), syzygy(x.B, n), None)
    return TripleModule(alg, direct_sum(first, second))


def _resolution_inclusion(A: Representation, n: int) -> Morphism:
    """``i_n: Ω^n A -> P_{n-1}`` of the minimal resolution."""
    res = minimal_resolution(A, n - 1)
    return res.inclusions[n - 1]


@dataclass
class SyzygyComparison:
    n: int
    formula: TripleModule
    direct: TripleModule
    agree_modulo_projectives: bool
    exact: bool
    radical_image: bool
    formula_projectives: int = 0
    direct_projectives: int = 0
    f_lifts: bool = True

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "formula_dim": list(self.formula.dim_vector()),
            "direct_dim": list(self.direct.dim_vector()),
            "agree_modulo_projectives": self.agree_modulo_projectives,
            "exact": self.exact,
            "image_in_radical": self.radical_image,
            "f_factors_through_projective": self.f_lifts,
            "formula_projective_summands": self.formula_projectives,
            "direct_projective_summands": self.direct_projectives,
        }


def _nonprojective_pieces(x: TripleModule):
    from .decomp import decompose

    pieces = decompose(x.flat).pieces()
    keep = [m for m in pieces if not is_projective(m)]
    return keep, len(pieces) - len(keep)


def compare_syzygies(x: TripleModule, n: int) -> SyzygyComparison:
    from .decomp import Verdict, is_isomorphic, same_up_to

    fo = triple_syzygy_formula(x, n)
    di = triple_syzygy_direct(x, n)
    fk, fp = _nonprojective_pieces(fo)
    dk, dp = _nonprojective_pieces(di)
    agree = same_up_to(fk, dk)
    exact = fo.dim_vector() == di.dim_vector() and is_isomorphic(fo.flat, di.flat).verdict is Verdict.YES
    return SyzygyComparison(n, fo, di, agree, exact, x.image_in_radical(), fp, dp, x.f_factors_through_projective())


# towers --------------------------------------------------------------------


def t_k_algebra(gamma: BoundQuiverAlgebra, k: int) -> TriangularAlgebra:
    """``T_k(Γ) = [[Γ, 0], [Γ^{k-1}, T_{k-1}(Γ)]]``; ``T_{k-1}(Γ)`` is realised as ``Γ ⊗ k A_{k-1}``."""
    if k < 2:
        raise ValueError("k must be at least 2")
    U = gamma if k == 2 else linear_tensor(gamma, k - 1)
    M = column_bimodule(gamma, U, k - 1)
    alg = TriangularAlgebra(gamma, U, M, name=f"T{k}({gamma.name})")
    alg.check_hypothesis()
    return alg


# constructions -------------------------------------------------------------


def it_module_construction(V: Representation, V2: Representation, alg: TriangularAlgebra) -> TripleModule:
    """``⊕_i (V, V' ⊕ M, h_i)`` over a basis ``h_i`` of ``Hom_U(M ⊗ V, V' ⊕ M)``."""
    target = direct_sum(V2, alg.M.left_module)
    t = alg.tensor(V)
    basis = hom_space(t.module, target)
    if not basis:
        return TripleModule(alg, zero_rep(alg))
    parts = [alg.flatten(V, target, h) for h in basis]
    out = direct_sum(*parts)
    return TripleModule(alg, Representation(alg, out.dims, out.maps, label=f"C[{len(basis)}]"))


def triple_from_json(obj: dict, alg: TriangularAlgebra) -> TripleModule:
    from .rep import rep_from_json

    A = rep_from_json(obj["A"], alg.T)
    B = rep_from_json(obj["B"], alg.U)
    return triple(alg, A, B, {w: np.array(m, dtype=np.int64) for w, m in obj.get("f", {}).items()},
                  label=obj.get("label", ""))
