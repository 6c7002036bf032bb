"""Krull-Schmidt decomposition, isomorphism tests and the iso-class registry.

Splitting idempotents are found by a Fitting-lemma search in the
endomorphism space: an endomorphism that is neither nilpotent nor invertible
splits the module as ``im φ^N ⊕ ker φ^N``.  The search is exhaustive when the
endomorphism space is small and randomized (seeded) otherwise.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import sympy

from . import ff
from .rep import Morphism, Representation, hom_dim, hom_space, identity, subrep

EXHAUSTIVE_LIMIT = 4096
RANDOM_TRIALS = 128


class Verdict(Enum):
    YES = "YES"
    NO = "NO"
    PROBABLY_NO = "PROBABLY_NO"


class Certainty(Enum):
    EXACT = "EXACT"
    PROBABLE = "PROBABLE"

    def __and__(self, other: "Certainty") -> "Certainty":
        return Certainty.EXACT if self is Certainty.EXACT and other is Certainty.EXACT else Certainty.PROBABLE


@dataclass
class IsoResult:
    verdict: Verdict
    witness: Morphism | None = None
    reason: str = ""

    def __bool__(self):
        return self.verdict is Verdict.YES


def _stack(basis: list[Morphism], verts) -> dict:
    return {v: np.stack([f.maps[v] for f in basis]) for v in verts}


def _element(stacked: dict, coeffs, p: int) -> dict:
    c = np.asarray(coeffs, dtype=np.int64)
    return {v: np.tensordot(c, b, axes=1) % p for v, b in stacked.items()}


def _candidates(d: int, p: int, rng: np.random.Generator):
    """Coefficient vectors to try: basis, pairwise sums, then exhaustive or random.

    Yields ``(coeffs, phase)`` with phase ``"sweep"``, ``"exhaustive"`` or ``"random"``.
    """
    for i in range(d):
        e = np.zeros(d, dtype=np.int64)
        e[i] = 1
        yield e, "sweep"
    for i, j in itertools.combinations(range(d), 2):
        e = np.zeros(d, dtype=np.int64)
        e[i] = e[j] = 1
        yield e, "sweep"
    if p**d <= EXHAUSTIVE_LIMIT:
        # one representative per line; scalars do not change the tests used here
        for lead in range(d):
            for tail in itertools.product(range(p), repeat=d - lead - 1):
                e = np.zeros(d, dtype=np.int64)
                e[lead] = 1
                e[lead + 1 :] = tail
                yield e, "exhaustive"
    else:
        for _ in range(RANDOM_TRIALS):
            yield rng.integers(0, p, size=d), "random"


def _fitting_power(maps: dict, p: int) -> dict:
    n = max((m.shape[0] for m in maps.values()), default=0)
    return {v: ff.matpow(m, max(n, 1), p) for v, m in maps.items()}


def _nilpotent_or_invertible(maps: dict, p: int) -> tuple[bool, dict]:
    pw = _fitting_power(maps, p)
    if not any(np.any(m) for m in pw.values()):
        return True, pw
    if all(ff.rank(m, p) == m.shape[0] for m in maps.values()):
        return True, pw
    return False, pw


def _minimal_polynomial(maps: dict, p: int) -> list[int]:
    """Monic minimal polynomial of the block-diagonal endomorphism (low degree first)."""
    mats = [m for m in maps.values() if m.size]
    big = ff.block_diag(mats) if mats else ff.zeros(0, 0)
    n = big.shape[0]
    powers = [ff.eye(n).reshape(-1)]
    cur = ff.eye(n)
    for deg in range(1, n + 1):
        cur = ff.mul(cur, big, p)
        mat = np.stack(powers, axis=1)
        x = ff.solve(mat, cur.reshape(-1, 1), p)
        if x is not None:
            return [int(-c) % p for c in x[:, 0]] + [1]
        powers.append(cur.reshape(-1))
    raise AssertionError("minimal polynomial degree exceeds matrix size")


def _poly_eval(coeffs: list[int], maps: dict, p: int) -> dict:
    out = {}
    for v, m in maps.items():
        acc = ff.zeros(*m.shape)
        for c in reversed(coeffs):
            acc = (ff.mul(acc, m, p) + c * ff.eye(m.shape[0])) % p
        out[v] = acc
    return out


_x = sympy.Symbol("x")


def _coprime_splitter(maps: dict, p: int) -> dict | None:
    mu = _minimal_polynomial(maps, p)
    if len(mu) <= 2:
        return None
    poly = sympy.Poly(list(reversed(mu)), _x, modulus=p)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    q = [int(c) % p for c in reversed(factors[0][0].all_coeffs())]
    return _poly_eval(q, maps, p)


def find_splitter(m: Representation, rng: np.random.Generator | None = None):
    """An endomorphism that is neither nilpotent nor invertible.

    Returns ``(maps_or_None, certainty)``; ``None`` with ``EXACT`` certainty
    certifies that ``m`` is indecomposable.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    p = m.p
    if m.dim <= 1:
        return None, Certainty.EXACT
    basis = hom_space(m, m)
    if len(basis) == 1:
        return None, Certainty.EXACT
    stacked = _stack(basis, m.quiver.vertices)
    exhaustive = False
    for coeffs, phase in _candidates(len(basis), p, rng):
        maps = _element(stacked, coeffs, p)
        ok, pw = _nilpotent_or_invertible(maps, p)
        if not ok:
            return pw, Certainty.EXACT
        if phase in ("sweep", "random"):
            psi = _coprime_splitter(maps, p)
            if psi is not None:
                return _fitting_power(psi, p), Certainty.EXACT
        exhaustive = exhaustive or phase == "exhaustive"
    return None, Certainty.EXACT if exhaustive else Certainty.PROBABLE


def _split(m: Representation, power: dict):
    img = {v: ff.colspace(x, m.p) for v, x in power.items()}
    ker = {v: ff.nullspace(x, m.p) if x.shape[1] else ff.zeros(0, 0) for v, x in power.items()}
    return subrep(m, img), subrep(m, ker)


@dataclass
class Summand:
    module: Representation
    multiplicity: int
    certainty: Certainty
    inclusions: list[Morphism] = field(default_factory=list)


@dataclass
class Decomposition:
    source: Representation
    summands: list[Summand]
    certainty: Certainty

    def __iter__(self):
        return iter((s.module, s.multiplicity) for s in self.summands)

    def __len__(self):
        return len(self.summands)

    def pieces(self) -> list[Representation]:
        return [s.module for s in self.summands for _ in range(s.multiplicity)]

    def recomposition(self) -> Morphism:
        """The map ``⊕ pieces -> source`` assembled from the summand inclusions."""
        from .rep import direct_sum, row_morphism

        incs = [i for s in self.summands for i in s.inclusions]
        if not incs:
            from .rep import zero_morphism, zero_rep

            return zero_morphism(zero_rep(self.source.algebra), self.source)
        total = direct_sum(*[i.source for i in incs])
        return row_morphism(incs, total)

    def is_indecomposable(self) -> bool:
        return len(self.summands) == 1 and self.summands[0].multiplicity == 1


def support_components(m: Representation) -> list[dict]:
    """Coordinate blocks ``{vertex: indices}`` that no arrow map connects.

    Each block spans a subrepresentation with the other blocks as complement,
    so direct sums built blockwise split here without any endomorphism work.
    """
    nodes = [(v, i) for v in m.quiver.vertices for i in range(m.dims[v])]
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in m.quiver.arrows:
        rows, cols = np.nonzero(m.maps[a.name])
        for i, j in zip(rows.tolist(), cols.tolist()):
            ra, rb = find((a.src, j)), find((a.tgt, i))
            if ra != rb:
                parent[ra] = rb
    blocks: dict = {}
    for x in nodes:
        blocks.setdefault(find(x), []).append(x)
    out = []
    for members in blocks.values():
        spaces = {v: [] for v in m.quiver.vertices}
        for v, i in members:
            spaces[v].append(i)
        out.append(spaces)
    return out


def _coordinate_piece(m: Representation, spaces: dict) -> tuple[Representation, Morphism]:
    dims = {v: len(spaces[v]) for v in m.quiver.vertices}
    maps = {a.name: m.maps[a.name][np.ix_(spaces[a.tgt], spaces[a.src])] for a in m.quiver.arrows}
    piece = Representation(m.algebra, dims, maps, label=m.label)
    inc = {}
    for v in m.quiver.vertices:
        e = ff.zeros(m.dims[v], dims[v])
        e[spaces[v], np.arange(dims[v])] = 1
        inc[v] = e
    return piece, Morphism(piece, m, inc)


def _indecomposable_pieces(m: Representation, rng) -> list[tuple[Representation, Morphism, Certainty]]:
    if m.is_zero():
        return []
    blocks = support_components(m)
    if len(blocks) > 1:
        out = []
        for spaces in blocks:
            piece, inc = _coordinate_piece(m, spaces)
            for sub, sinc, c in _indecomposable_pieces(piece, rng):
                out.append((sub, inc @ sinc, c))
        return out
    power, cert = find_splitter(m, rng)
    if power is None:
        return [(m, identity(m), cert)]
    (y, iy), (z, iz) = _split(m, power)
    out = []
    for piece, inc in ((y, iy), (z, iz)):
        for sub, sinc, c in _indecomposable_pieces(piece, rng):
            out.append((sub, inc @ sinc, c))
    return out


def decompose(m: Representation, seed: int = 0) -> Decomposition:
    """Split ``m`` into indecomposable summands grouped by isomorphism class."""
    rng = np.random.default_rng(seed)
    raw = _indecomposable_pieces(m, rng)
    groups: list[Summand] = []
    cert = Certainty.EXACT
    for piece, inc, c in raw:
        cert = cert & c
        for g in groups:
            if g.module.dim_vector() != piece.dim_vector():
                continue
            res = is_isomorphic(g.module, piece, seed=seed)
            if res.verdict is Verdict.YES:
                g.multiplicity += 1
                # express the copy through the group representative
                g.inclusions.append(inc @ res.witness)
                g.certainty = g.certainty & c
                break
            if res.verdict is Verdict.PROBABLY_NO:
                cert = Certainty.PROBABLE
        else:
            groups.append(Summand(piece, 1, c, [inc]))
    return Decomposition(m, groups, cert)


def is_isomorphic(m: Representation, n: Representation, seed: int = 0) -> IsoResult:
    if m.algebra is not n.algebra:
        raise ValueError("algebra mismatch")
    if m.dim_vector() != n.dim_vector():
        return IsoResult(Verdict.NO, reason="dimension vectors differ")
    if m.is_zero():
        return IsoResult(Verdict.YES, identity(m), "zero modules")
    basis = hom_space(m, n)
    if not basis:
        return IsoResult(Verdict.NO, reason="Hom(m, n) = 0")
    d_mm, d_nn = hom_dim(m, m), hom_dim(n, n)
    if d_mm != d_nn or len(basis) != d_mm:
        return IsoResult(Verdict.NO, reason=f"Hom dimensions differ ({d_mm}, {d_nn}, {len(basis)})")
    p = m.p
    stacked = _stack(basis, m.quiver.vertices)
    rng = np.random.default_rng(seed)
    exhaustive = False
    for coeffs, phase in _candidates(len(basis), p, rng):
        maps = _element(stacked, coeffs, p)
        if all(ff.rank(x, p) == x.shape[0] for x in maps.values()):
            return IsoResult(Verdict.YES, Morphism(m, n, maps), f"invertible element found ({phase})")
        exhaustive = exhaustive or phase == "exhaustive"
    if exhaustive:
        return IsoResult(Verdict.NO, reason="no invertible element in the full Hom space")
    return IsoResult(Verdict.PROBABLY_NO, reason=f"no invertible element in {RANDOM_TRIALS} random trials")


def same_up_to(pieces_a: list[Representation], pieces_b: list[Representation], seed: int = 0) -> bool:
    """Multiset equality of indecomposables up to isomorphism."""
    rest = list(pieces_b)
    for x in pieces_a:
        for i, y in enumerate(rest):
            if x.dim_vector() == y.dim_vector() and is_isomorphic(x, y, seed).verdict is Verdict.YES:
                del rest[i]
                break
        else:
            return False
    return not rest


# registry ----------------------------------------------------------------


@dataclass
class IsoClass:
    ident: int
    dim_vector: tuple
    module: Representation
    certainty: Certainty
    projective: bool | None = None


class IsoClassRegistry:
    """Indecomposable iso-classes, looked up by dimension vector then iso test."""

    def __init__(self, algebra, seed: int = 0):
        self.algebra = algebra
        self.seed = seed
        self.entries: list[IsoClass] = []
        self._by_dims: dict[tuple, list[IsoClass]] = {}

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, ident: int) -> IsoClass:
        return self.entries[ident]

    def lookup(self, m: Representation) -> IsoClass | None:
        for e in self._by_dims.get(m.dim_vector(), []):
            res = is_isomorphic(e.module, m, self.seed)
            if res.verdict is Verdict.YES:
                return e
            if res.verdict is Verdict.PROBABLY_NO:
                e.certainty = Certainty.PROBABLE
        return None

    def register(self, m: Representation, certainty: Certainty | None = None, check: bool = True) -> IsoClass:
        if m.algebra is not self.algebra:
            raise ValueError("module lives over a different algebra")
        if m.is_zero():
            raise ValueError("the zero module is not indecomposable")
        if check:
            dec = decompose(m, self.seed)
            if not dec.is_indecomposable():
                raise ValueError("cannot register a decomposable module")
            certainty = dec.certainty
        found = self.lookup(m)
        if found is not None:
            return found
        entry = IsoClass(len(self.entries), m.dim_vector(), m, certainty or Certainty.EXACT)
        self.entries.append(entry)
        self._by_dims.setdefault(entry.dim_vector, []).append(entry)
        return entry

    def register_summands(self, m: Representation) -> list[tuple[IsoClass, int]]:
        dec = decompose(m, self.seed)
        out = []
        for s in dec.summands:
            out.append((self.register(s.module, s.certainty & dec.certainty, check=False), s.multiplicity))
        return out

    def certainty(self) -> Certainty:
        c = Certainty.EXACT
        for e in self.entries:
            c = c & e.certainty
        return c

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.name,
            "seed": self.seed,
            "entries": [
                {
                    "id": e.ident,
                    "dim_vector": list(e.dim_vector),
                    "certainty": e.certainty.value,
                    "module": e.module.to_json(),
                }
                for e in self.entries
            ],
        }

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, obj: dict, algebra) -> "IsoClassRegistry":
        from .rep import rep_from_json

        reg = cls(algebra, obj.get("seed", 0))
        for e in sorted(obj["entries"], key=lambda e: e["id"]):
            m = rep_from_json(e["module"], algebra)
            entry = IsoClass(len(reg.entries), m.dim_vector(), m, Certainty(e["certainty"]))
            reg.entries.append(entry)
            reg._by_dims.setdefault(entry.dim_vector, []).append(entry)
        return reg

    @classmethod
    def load(cls, path, algebra) -> "IsoClassRegistry":
        with open(path) as fh:
            return cls.from_json(json.load(fh), algebra)


def register(reg: IsoClassRegistry, m: Representation) -> IsoClass:
    return reg.register(m)


def nakayama_indecomposables(alg) -> list[Representation]:
    """Every indecomposable over a Nakayama algebra: the quotients ``P(v)/rad^k P(v)``."""
    from .quiver import is_nakayama, projective
    from .rep import quotient

    if not is_nakayama(alg):
        raise ValueError(f"{alg.name} is not a Nakayama algebra")
    out = []
    for v in alg.vertices:
        pv = projective(alg, v)
        spaces = {t: alg.basis_between(v, t) for t in alg.vertices}
        top_len = max(b.length for b in alg.basis if b.src == v)
        for k in range(1, top_len + 2):
            sub = {}
            for t, paths in spaces.items():
                cols = [i for i, b in enumerate(paths) if b.length >= k]
                e = ff.zeros(len(paths), len(cols))
                for j, i in enumerate(cols):
                    e[i, j] = 1
                sub[t] = e
            q, _ = quotient(pv, sub)
            label = pv.label if k > top_len else f"P({v})/rad^{k}"
            out.append(Representation(alg, q.dims, q.maps, label=label))
    return out
