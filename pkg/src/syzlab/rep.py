"""Finite-dimensional representations, morphisms and the homological toolkit.

A :class:`Representation` lives over an *ambient* algebra object exposing
``quiver``, ``char``, ``relation_failures(rep)`` and ``projective_cover(rep)``.
Bound quiver algebras are the main ambient; triangular matrix algebras reuse
everything here through their flattened triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ff
from .quiver import Path


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Representation:
    algebra: object
    dims: dict
    maps: dict
    label: str = ""

    def __post_init__(self):
        q = self.algebra.quiver
        p = self.algebra.char
        dims = {v: int(self.dims.get(v, 0)) for v in q.vertices}
        extra = set(self.dims) - set(q.vertices)
        if extra:
            raise RepresentationError(f"unknown vertices {sorted(extra)}")
        if any(d < 0 for d in dims.values()):
            raise RepresentationError("dimensions must be non-negative")
        maps = {}
        for a in q.arrows:
            shape = (dims[a.tgt], dims[a.src])
            m = self.maps.get(a.name)
            if m is None:
                m = ff.zeros(*shape)
            m = ff.asmat(m, p, shape if np.size(m) == 0 else None)
            if m.shape != shape:
                raise RepresentationError(f"arrow {a.name}: matrix shape {m.shape}, expected {shape}")
            m.setflags(write=False)
            maps[a.name] = m
        extra = set(self.maps) - set(maps)
        if extra:
            raise RepresentationError(f"unknown arrows {sorted(extra)}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "maps", maps)
        bad = self.algebra.relation_failures(self)
        if bad:
            raise RepresentationError("; ".join(bad))

    @property
    def p(self) -> int:
        return self.algebra.char

    @property
    def quiver(self):
        return self.algebra.quiver

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    def is_zero(self) -> bool:
        return self.dim == 0

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "dims": dict(self.dims),
            "maps": {a: m.tolist() for a, m in self.maps.items()},
        }

    def __repr__(self):
        tag = f" {self.label}" if self.label else ""
        return f"<Representation{tag} dims={self.dim_vector()} over {self.algebra.name}>"


def zero_rep(alg) -> Representation:
    return Representation(alg, {}, {})


def simple(alg, vertex: str) -> Representation:
    return Representation(alg, {str(vertex): 1}, {}, label=f"S({vertex})")


def evaluate_path(rep: Representation, arrows, start: str) -> np.ndarray:
    out = ff.eye(rep.dims[start])
    for name in arrows:
        out = ff.mul(rep.maps[name], out, rep.p)
    return out


def rep_from_json(obj: dict, alg) -> Representation:
    return Representation(alg, obj.get("dims", {}), {a: np.array(m, dtype=np.int64) for a, m in obj.get("maps", {}).items()})


# morphisms ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Representation
    target: Representation
    maps: dict

    def __post_init__(self):
        if self.source.algebra is not self.target.algebra:
            raise RepresentationError("source and target live over different algebras")
        p = self.source.p
        maps = {}
        for v in self.source.quiver.vertices:
            shape = (self.target.dims[v], self.source.dims[v])
            m = self.maps.get(v)
            m = ff.zeros(*shape) if m is None else ff.asmat(m, p, shape if np.size(m) == 0 else None)
            if m.shape != shape:
                raise RepresentationError(f"vertex {v}: shape {m.shape}, expected {shape}")
            m.setflags(write=False)
            maps[v] = m
        object.__setattr__(self, "maps", maps)
        for a in self.source.quiver.arrows:
            lhs = ff.mul(self.target.maps[a.name], maps[a.src], p)
            rhs = ff.mul(maps[a.tgt], self.source.maps[a.name], p)
            if not np.array_equal(lhs, rhs):
                raise RepresentationError(f"not a morphism: square at arrow {a.name} fails")

    @property
    def p(self) -> int:
        return self.source.p

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """``self @ other`` is the composite "first ``other``, then ``self``"."""
        if other.target is not self.source:
            raise RepresentationError("composition of non-composable morphisms")
        return Morphism(other.source, self.target, {v: ff.mul(self.maps[v], other.maps[v], self.p) for v in self.maps})

    def __add__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, {v: (self.maps[v] + other.maps[v]) % self.p for v in self.maps})

    def __sub__(self, other: "Morphism") -> "Morphism":
        return Morphism(self.source, self.target, {v: (self.maps[v] - other.maps[v]) % self.p for v in self.maps})

    def scale(self, c: int) -> "Morphism":
        return Morphism(self.source, self.target, {v: (c * m) % self.p for v, m in self.maps.items()})

    def vector(self) -> np.ndarray:
        parts = [m.reshape(-1) for m in self.maps.values()]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.maps.values())

    def is_mono(self) -> bool:
        return all(ff.rank(m, self.p) == m.shape[1] for m in self.maps.values())

    def is_epi(self) -> bool:
        return all(ff.rank(m, self.p) == m.shape[0] for m in self.maps.values())

    def is_iso(self) -> bool:
        return all(m.shape[0] == m.shape[1] for m in self.maps.values()) and self.is_mono()

    def inverse(self) -> "Morphism":
        return Morphism(self.target, self.source, {v: ff.inverse(m, self.p) for v, m in self.maps.items()})

    def equals(self, other: "Morphism") -> bool:
        return all(np.array_equal(self.maps[v], other.maps[v]) for v in self.maps)

    def to_json(self) -> dict:
        return {v: m.tolist() for v, m in self.maps.items()}


def identity(m: Representation) -> Morphism:
    return Morphism(m, m, {v: ff.eye(d) for v, d in m.dims.items()})


def zero_morphism(m: Representation, n: Representation) -> Morphism:
    return Morphism(m, n, {})


def morphism_from_vector(m: Representation, n: Representation, vec) -> Morphism:
    maps = {}
    off = 0
    for v in m.quiver.vertices:
        r, c = n.dims[v], m.dims[v]
        maps[v] = np.asarray(vec[off : off + r * c], dtype=np.int64).reshape(r, c)
        off += r * c
    return Morphism(m, n, maps)


def combine(basis: list[Morphism], coeffs, m: Representation, n: Representation) -> Morphism:
    p = m.p
    maps = {v: ff.zeros(n.dims[v], m.dims[v]) for v in m.quiver.vertices}
    for c, f in zip(coeffs, basis):
        c = int(c) % p
        if c:
            for v in maps:
                maps[v] = (maps[v] + c * f.maps[v]) % p
    return Morphism(m, n, maps)


# direct sums -------------------------------------------------------------


@dataclass
class DirectSum:
    module: Representation
    injections: list[Morphism]
    projections: list[Morphism]


def direct_sum_data(reps: list[Representation]) -> DirectSum:
    if not reps:
        raise ValueError("need at least one summand")
    alg = reps[0].algebra
    q = alg.quiver
    dims = {v: sum(r.dims[v] for r in reps) for v in q.vertices}
    maps = {a.name: ff.block_diag([r.maps[a.name] for r in reps]) for a in q.arrows}
    total = Representation(alg, dims, maps, label="⊕".join(r.label or "?" for r in reps) if len(reps) > 1 else reps[0].label)
    inj, proj = [], []
    offs = {v: 0 for v in q.vertices}
    for r in reps:
        im, pm = {}, {}
        for v in q.vertices:
            e = ff.zeros(dims[v], r.dims[v])
            e[offs[v] : offs[v] + r.dims[v], :] = ff.eye(r.dims[v])
            im[v] = e
            pm[v] = np.ascontiguousarray(e.T)
            offs[v] += r.dims[v]
        inj.append(Morphism(r, total, im))
        proj.append(Morphism(total, r, pm))
    return DirectSum(total, inj, proj)


def direct_sum(*reps: Representation) -> Representation:
    if len(reps) == 1 and isinstance(reps[0], (list, tuple)):
        reps = tuple(reps[0])
    return direct_sum_data(list(reps)).module


def power(rep: Representation, k: int) -> Representation:
    if k == 0:
        return zero_rep(rep.algebra)
    return direct_sum(*([rep] * k))


def morphism_direct_sum(fs: list[Morphism], source: Representation | None = None, target: Representation | None = None) -> Morphism:
    source = source or direct_sum(*[f.source for f in fs])
    target = target or direct_sum(*[f.target for f in fs])
    return Morphism(source, target, {v: ff.block_diag([f.maps[v] for f in fs]) for v in source.quiver.vertices})


def row_morphism(fs: list[Morphism], source: Representation) -> Morphism:
    """``[f_1 ... f_k]`` from the direct sum ``source`` of the f-sources."""
    target = fs[0].target
    return Morphism(source, target, {v: np.hstack([f.maps[v] for f in fs]) if fs else ff.zeros(target.dims[v], 0) for v in source.quiver.vertices})


def column_morphism(fs: list[Morphism], target: Representation) -> Morphism:
    """``[f_1; ...; f_k]`` into the direct sum ``target`` of the f-targets."""
    source = fs[0].source
    return Morphism(source, target, {v: np.vstack([f.maps[v] for f in fs]) for v in source.quiver.vertices})


# sub- and quotient objects ----------------------------------------------


def subrep(m: Representation, spaces: dict) -> tuple[Representation, Morphism]:
    """The subrepresentation whose space at ``v`` is spanned by ``spaces[v]``.

    ``spaces[v]`` must have independent columns and the family must be stable
    under the arrows.
    """
    p = m.p
    q = m.quiver
    maps = {}
    for a in q.arrows:
        ks, kt = spaces[a.src], spaces[a.tgt]
        img = ff.mul(m.maps[a.name], ks, p)
        x = ff.solve(kt, img, p)
        if x is None:
            raise RepresentationError(f"subspace family is not stable under arrow {a.name}")
        maps[a.name] = x
    sub = Representation(m.algebra, {v: spaces[v].shape[1] for v in q.vertices}, maps)
    return sub, Morphism(sub, m, {v: spaces[v] for v in q.vertices})


def quotient(m: Representation, spaces: dict) -> tuple[Representation, Morphism]:
    p = m.p
    q = m.quiver
    qm, sec = {}, {}
    for v in q.vertices:
        qm[v], sec[v] = ff.quotient_map(spaces[v], p)
    maps = {a.name: ff.mul(ff.mul(qm[a.tgt], m.maps[a.name], p), sec[a.src], p) for a in q.arrows}
    quo = Representation(m.algebra, {v: qm[v].shape[0] for v in q.vertices}, maps)
    return quo, Morphism(m, quo, qm)


def kernel(f: Morphism) -> tuple[Representation, Morphism]:
    p = f.p
    spaces = {}
    for v, mat in f.maps.items():
        k = ff.nullspace(mat, p)
        spaces[v] = k if mat.shape[1] else ff.zeros(0, 0)
    return subrep(f.source, spaces)


def image(f: Morphism) -> tuple[Representation, Morphism]:
    spaces = {v: ff.colspace(mat, f.p) for v, mat in f.maps.items()}
    return subrep(f.target, spaces)


def cokernel(f: Morphism) -> tuple[Representation, Morphism]:
    spaces = {v: ff.colspace(mat, f.p) for v, mat in f.maps.items()}
    return quotient(f.target, spaces)


def radical_spaces(m: Representation) -> dict:
    q = m.quiver
    out = {}
    for v in q.vertices:
        cols = [m.maps[a.name] for a in q.in_arrows(v)]
        stacked = np.hstack(cols) if cols else ff.zeros(m.dims[v], 0)
        out[v] = ff.colspace(stacked, m.p)
    return out


def radical(m: Representation) -> tuple[Representation, Morphism]:
    return subrep(m, radical_spaces(m))


def top(m: Representation) -> tuple[Representation, Morphism]:
    return quotient(m, radical_spaces(m))


# homomorphisms -----------------------------------------------------------


def _hom_system(m: Representation, n: Representation) -> tuple[np.ndarray, dict]:
    q = m.quiver
    offs, off = {}, 0
    for v in q.vertices:
        offs[v] = off
        off += n.dims[v] * m.dims[v]
    blocks = []
    for a in q.arrows:
        s, t = a.src, a.tgt
        rows = n.dims[t] * m.dims[s]
        if rows == 0:
            continue
        eq = ff.zeros(rows, off)
        # row-major vec(A X B) = (A ⊗ B^T) vec(X)
        if n.dims[s] * m.dims[s]:
            eq[:, offs[s] : offs[s] + n.dims[s] * m.dims[s]] += np.kron(n.maps[a.name], ff.eye(m.dims[s]))
        if n.dims[t] * m.dims[t]:
            eq[:, offs[t] : offs[t] + n.dims[t] * m.dims[t]] -= np.kron(ff.eye(n.dims[t]), m.maps[a.name].T)
        blocks.append(eq % m.p)
    system = np.vstack(blocks) if blocks else ff.zeros(0, off)
    return system, offs


def hom_space(m: Representation, n: Representation) -> list[Morphism]:
    """A basis of ``Hom(m, n)``."""
    if m.algebra is not n.algebra:
        raise RepresentationError("algebra mismatch")
    system, _ = _hom_system(m, n)
    nvars = system.shape[1]
    if nvars == 0:
        return []
    if system.shape[0] == 0:
        basis = ff.eye(nvars)
    else:
        basis = ff.nullspace(system, m.p)
    return [morphism_from_vector(m, n, basis[:, j]) for j in range(basis.shape[1])]


def hom_dim(m: Representation, n: Representation) -> int:
    system, _ = _hom_system(m, n)
    return system.shape[1] - ff.rank(system, m.p) if system.shape[0] else system.shape[1]


def factor_through(g: Morphism, f: Morphism) -> Morphism | None:
    """Some ``h`` with ``g @ h == f`` (``f: X -> Z``, ``g: Y -> Z``), if one exists."""
    if g.target is not f.target:
        raise RepresentationError("targets differ")
    basis = hom_space(f.source, g.source)
    if not basis:
        return zero_morphism(f.source, g.source) if f.is_zero() else None
    cols = np.stack([(g @ h).vector() for h in basis], axis=1) if f.vector().size else ff.zeros(0, len(basis))
    rhs = f.vector().reshape(-1, 1)
    if cols.shape[0] == 0:
        return zero_morphism(f.source, g.source)
    x = ff.solve(cols, rhs, f.p)
    if x is None:
        return None
    return combine(basis, x[:, 0], f.source, g.source)


def factor_through_mono(i: Morphism, f: Morphism) -> Morphism | None:
    """Some ``h`` with ``i @ h == f`` for a monomorphism ``i``; vertexwise solve."""
    maps = {}
    for v in f.maps:
        x = ff.solve(i.maps[v], f.maps[v], f.p)
        if x is None:
            return None
        maps[v] = x
    return Morphism(f.source, i.source, maps)


def section(g: Morphism) -> Morphism | None:
    """A right inverse ``s`` of ``g`` (``g @ s = 1``), if ``g`` splits."""
    return factor_through(g, identity(g.target))


def retraction(i: Morphism) -> Morphism | None:
    """A left inverse ``r`` of ``i`` (``r @ i = 1``), if ``i`` splits."""
    basis = hom_space(i.target, i.source)
    target = identity(i.source).vector()
    if target.size == 0:
        return zero_morphism(i.target, i.source)
    if not basis:
        return None
    cols = np.stack([(h @ i).vector() for h in basis], axis=1)
    x = ff.solve(cols, target.reshape(-1, 1), i.p)
    return None if x is None else combine(basis, x[:, 0], i.target, i.source)


# projective covers and syzygies -----------------------------------------


def path_action(m: Representation, path: Path, vec: np.ndarray) -> np.ndarray:
    out = vec
    for name in path.arrows:
        out = ff.mul(m.maps[name], out, m.p)
    return out


def generators_cover(m: Representation, gens: list[tuple[str, np.ndarray]]) -> tuple[Representation, Morphism]:
    """The map ``⊕ P(v) -> m`` sending the generator of each ``P(v)`` to the given vector."""
    from .quiver import projective

    alg = m.algebra
    if not gens:
        z = zero_rep(alg)
        return z, zero_morphism(z, m)
    pieces = [projective(alg, v) for v, _ in gens]
    ds = direct_sum_data(pieces)
    maps = {v: [] for v in alg.vertices}
    for (v, vec), piece in zip(gens, pieces):
        vec = np.asarray(vec, dtype=np.int64).reshape(-1, 1)
        for t in alg.vertices:
            cols = [path_action(m, b, vec) for b in alg.basis_between(v, t)]
            maps[t].append(np.hstack(cols) if cols else ff.zeros(m.dims[t], 0))
    epi = Morphism(ds.module, m, {t: np.hstack(maps[t]) for t in alg.vertices})
    return ds.module, epi


def top_generators(m: Representation, extra: dict | None = None) -> list[tuple[str, np.ndarray]]:
    """Vectors whose classes form a basis of ``m / (rad m + extra)``."""
    rad = radical_spaces(m)
    gens = []
    for v in m.quiver.vertices:
        sub = rad[v]
        if extra is not None and extra[v].shape[1]:
            sub = ff.colspace(np.hstack([sub, extra[v]]), m.p)
        comp = ff.complement_basis(sub, m.dims[v], m.p)
        gens.extend((v, comp[:, j]) for j in range(comp.shape[1]))
    return gens


def projective_cover(m: Representation) -> tuple[Representation, Morphism]:
    """Minimal projective cover over a bound quiver algebra."""
    pc, epi = generators_cover(m, top_generators(m))
    if not epi.is_epi():
        raise AssertionError("cover construction is not surjective")
    return pc, epi


def cover(m: Representation) -> tuple[Representation, Morphism]:
    return m.algebra.projective_cover(m)


def is_minimal_cover(epi: Morphism) -> bool:
    k, inc = kernel(epi)
    rad = radical_spaces(epi.source)
    for v, mat in inc.maps.items():
        if mat.shape[1] == 0:
            continue
        if rad[v].shape[1] == 0 or ff.solve(rad[v], mat, epi.p) is None:
            return False
    return True


def syzygy_data(m: Representation) -> tuple[Representation, Morphism, Morphism]:
    """``(Ω m, inclusion Ω m -> P, cover P -> m)``."""
    pc, epi = cover(m)
    k, inc = kernel(epi)
    return k, inc, epi


def syzygy(m: Representation, n: int = 1) -> Representation:
    if n < 0:
        raise ValueError("n must be non-negative")
    for _ in range(n):
        if m.is_zero():
            break
        m = syzygy_data(m)[0]
    return m


@dataclass
class Resolution:
    """Minimal projective resolution data.

    ``covers[k]: P_k -> Ω^k``; ``inclusions[k]: Ω^{k+1} -> P_k``.
    """

    module: Representation
    covers: list[Morphism] = field(default_factory=list)
    inclusions: list[Morphism] = field(default_factory=list)

    def projective(self, k: int) -> Representation:
        return self.covers[k].source

    def syzygy(self, k: int) -> Representation:
        return self.module if k == 0 else self.inclusions[k - 1].source

    def differential(self, k: int) -> Morphism:
        """``d_k: P_k -> P_{k-1}`` for ``k >= 1``."""
        return self.inclusions[k - 1] @ self.covers[k]


def minimal_resolution(m: Representation, length: int) -> Resolution:
    res = Resolution(m)
    cur = m
    for _ in range(length + 1):
        k, inc, epi = syzygy_data(cur)
        res.covers.append(epi)
        res.inclusions.append(inc)
        cur = k
    return res


def is_projective(m: Representation) -> bool:
    if m.is_zero():
        return True
    pc, _ = cover(m)
    return pc.dim == m.dim


@dataclass(frozen=True)
class PD:
    """Projective dimension: ``value`` when finite, else the bound reached."""

    value: int | None
    at_least: int
    periodic: tuple[int, int] | None = None

    @property
    def finite(self) -> bool:
        return self.value is not None

    def __str__(self):
        if self.finite:
            return str(self.value)
        if self.periodic:
            return f"inf (Ω^{self.periodic[0]} ≅ Ω^{self.periodic[1]})"
        return f">={self.at_least}"


def pd(m: Representation, cap: int = 16) -> PD:
    """Least ``k <= cap`` with ``Ω^k m`` projective; infinite when periodicity is certified."""
    from .decomp import Verdict, is_isomorphic

    seen: list[Representation] = []
    cur = m
    for k in range(cap + 1):
        if is_projective(cur):
            return PD(k, k)
        for j, old in enumerate(seen):
            if old.dim_vector() == cur.dim_vector() and is_isomorphic(old, cur).verdict is Verdict.YES:
                return PD(None, cap, (j, k))
        seen.append(cur)
        cur = syzygy(cur)
    return PD(None, cap)


def _precompose_matrix(basis: list[Morphism], d: Morphism) -> np.ndarray:
    """Columns: ``h @ d`` flattened, for ``h`` in ``basis``."""
    if not basis:
        return ff.zeros(0, 0)
    return np.stack([(h @ d).vector() for h in basis], axis=1)


def ext_dim(m: Representation, n: Representation, j: int) -> int:
    """``dim Ext^j(m, n)`` from the minimal projective resolution of ``m``."""
    if j < 0:
        raise ValueError("j must be non-negative")
    if j == 0:
        return hom_dim(m, n)
    res = minimal_resolution(m, j + 1)
    pj = res.projective(j)
    hom_j = hom_space(pj, n)
    if not hom_j:
        return 0
    d_next = res.differential(j + 1)
    out = _precompose_matrix(hom_j, d_next)
    kernel_dim = len(hom_j) - (ff.rank(out, m.p) if out.size else 0)
    hom_prev = hom_space(res.projective(j - 1), n)
    if not hom_prev:
        return kernel_dim
    d_j = res.differential(j)
    # image of Hom(P_{j-1}, n) -> Hom(P_j, n)
    inc = _precompose_matrix(hom_prev, d_j)
    img_rank = ff.rank(inc, m.p) if inc.size else 0
    return kernel_dim - img_rank


def pullback(f: Morphism, g: Morphism) -> tuple[Representation, Morphism, Morphism]:
    """Fibered product of ``f: X -> Z`` and ``g: Y -> Z`` with projections to ``X`` and ``Y``."""
    if f.target is not g.target:
        raise RepresentationError("pullback needs a common target")
    ds = direct_sum_data([f.source, g.source])
    diff = row_morphism([f, g.scale(-1)], ds.module)
    pb, inc = kernel(diff)
    return pb, ds.projections[0] @ inc, ds.projections[1] @ inc


# short exact sequences ---------------------------------------------------


@dataclass
class ShortExactSequence:
    mono: Morphism
    epi: Morphism

    def __post_init__(self):
        if self.mono.target is not self.epi.source:
            raise RepresentationError("mono and epi do not share the middle term")

    @property
    def left(self) -> Representation:
        return self.mono.source

    @property
    def middle(self) -> Representation:
        return self.mono.target

    @property
    def right(self) -> Representation:
        return self.epi.target

    def failures(self) -> list[str]:
        p = self.mono.p
        bad = []
        if not self.mono.is_mono():
            bad.append("left map is not injective")
        if not self.epi.is_epi():
            bad.append("right map is not surjective")
        for v in self.mono.maps:
            comp = ff.mul(self.epi.maps[v], self.mono.maps[v], p)
            if np.any(comp):
                bad.append(f"composite is nonzero at vertex {v}")
            elif ff.rank(self.mono.maps[v], p) != self.middle.dims[v] - ff.rank(self.epi.maps[v], p):
                bad.append(f"image differs from kernel at vertex {v}")
        return bad

    def is_exact(self) -> bool:
        return not self.failures()


def cover_sequence(m: Representation) -> ShortExactSequence:
    k, inc, epi = syzygy_data(m)
    return ShortExactSequence(inc, epi)


def split_sequence(x: Representation, z: Representation) -> ShortExactSequence:
    ds = direct_sum_data([x, z])
    return ShortExactSequence(ds.injections[0], ds.projections[1])
