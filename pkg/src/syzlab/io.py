"""File formats and the small module expression language used by the CLI.

Algebras are corpus names (``A2``, ``T2(L2)``, ...) or JSON files.  A
bound quiver algebra file holds ``vertices``, ``arrows``, ``relations`` and
``char``; a triangular algebra file holds ``T``, ``U`` and a bimodule ``M``.

Module expressions: ``S(v)``, ``P(v)``, ``P(v)/rad^k``, ``0``, sums
``X + Y``, powers ``3*X``, or a path to a module JSON file.  Over a
triangular algebra ``bar:EXPR`` and ``under:EXPR`` embed T- and U-modules,
``corpus:i`` picks the i-th corpus triple and ``proj:v`` the indecomposable
projective of index ``v``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import corpus, ff, pex
from .quiver import BoundQuiverAlgebra, algebra_from_json, projective
from .rep import Morphism, Representation, direct_sum, power, quotient, radical_spaces, rep_from_json, simple, zero_rep
from .triangular import Bimodule, TriangularAlgebra, TripleModule, embed_bar, embed_under, triple_from_json


class InputError(ValueError):
    pass


def dumps(obj) -> str:
    """Deterministic JSON: insertion order kept, no timestamps, UTF-8."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


# algebras ------------------------------------------------------------------


def triangular_to_json(alg: TriangularAlgebra) -> dict:
    return {"name": alg.name, "T": alg.T.to_json(), "U": alg.U.to_json(), "M": alg.M.to_json()}


def triangular_from_json(obj: dict) -> TriangularAlgebra:
    T = algebra_from_json(obj["T"])
    U = algebra_from_json(obj["U"])
    M = Bimodule.from_json(obj["M"], U, T)
    return TriangularAlgebra(T, U, M, name=obj.get("name"))


def algebra_to_json(alg) -> dict:
    return triangular_to_json(alg) if isinstance(alg, TriangularAlgebra) else alg.to_json()


def load_algebra(spec: str, p: int = ff.DEFAULT_CHAR):
    if spec in corpus.NAMES:
        return corpus.algebra(spec, p)
    if not os.path.exists(spec):
        raise InputError(f"{spec!r} is neither a corpus algebra ({', '.join(corpus.NAMES)}) nor a file")
    obj = _read_json(spec)
    if "T" in obj and "U" in obj:
        return triangular_from_json(obj)
    return algebra_from_json(obj)


# modules -------------------------------------------------------------------


_atom = re.compile(r"^(?:(\d+)\s*\*\s*)?(.+)$")
_top = re.compile(r"^P\((.+)\)/rad\^(\d+)$")


def _split_sum(expr: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in expr:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [s.strip() for s in parts if s.strip()]


def truncated_projective(alg: BoundQuiverAlgebra, vertex: str, k: int) -> Representation:
    """``P(v) / rad^k P(v)``."""
    P = projective(alg, vertex)
    spaces = None
    for _ in range(k):
        spaces = radical_spaces(P) if spaces is None else _radical_within(P, spaces)
    if spaces is None:
        return zero_rep(alg)
    q, _ = quotient(P, spaces)
    return Representation(alg, q.dims, q.maps, label=f"P({vertex})/rad^{k}")


def _radical_within(P: Representation, spaces: dict) -> dict:
    """``rad`` applied to the subspace ``spaces`` of ``P``: the span of arrow images."""
    out = {}
    p = P.p
    for v in P.quiver.vertices:
        cols = [ff.mul(P.maps[a.name], spaces[a.src], p) for a in P.quiver.in_arrows(v)]
        cols = [c for c in cols if c.shape[1]]
        out[v] = ff.colspace(np.hstack(cols), p) if cols else ff.zeros(P.dims[v], 0)
    return out


def _module_atom(alg, token: str) -> Representation:
    if token == "0":
        return zero_rep(alg)
    if os.path.exists(token):
        return rep_from_json(_read_json(token), alg)
    m = _top.match(token)
    if m:
        return truncated_projective(alg, m.group(1), int(m.group(2)))
    if token.startswith("S(") and token.endswith(")"):
        return simple(alg, token[2:-1])
    if token.startswith("P(") and token.endswith(")"):
        return projective(alg, token[2:-1])
    raise InputError(f"cannot parse module {token!r}")


def load_module(expr: str, alg) -> Representation:
    """Parse a module expression over a bound quiver algebra (or a flat triple over a triangular one)."""
    if isinstance(alg, TriangularAlgebra):
        return load_triple(expr, alg).flat
    pieces = []
    for part in _split_sum(expr):
        mult, token = _atom.match(part).groups()
        m = _module_atom(alg, token.strip())
        pieces.append(power(m, int(mult)) if mult else m)
    if not pieces:
        raise InputError("empty module expression")
    out = pieces[0] if len(pieces) == 1 else direct_sum(*pieces)
    if len(pieces) == 1 and not out.label:
        out = Representation(alg, out.dims, out.maps, label=expr)
    return out


def load_triple(expr: str, alg: TriangularAlgebra) -> TripleModule:
    parts = _split_sum(expr)
    if len(parts) > 1:
        flats = [load_triple(s, alg).flat for s in parts]
        return TripleModule(alg, direct_sum(*flats))
    expr = parts[0] if parts else expr
    if expr.startswith("bar:"):
        return embed_bar(alg, load_module(expr[4:], alg.T))
    if expr.startswith("under:"):
        return embed_under(alg, load_module(expr[6:], alg.U))
    if expr.startswith("corpus:"):
        items = corpus.corpus_triples(alg)
        i = int(expr[7:])
        if not 0 <= i < len(items):
            raise InputError(f"corpus triple index {i} out of range (0..{len(items) - 1})")
        return items[i]
    if expr.startswith("proj:"):
        projs = alg.indecomposable_projectives()
        i = int(expr[5:])
        return TripleModule(alg, projs[i])
    if os.path.exists(expr):
        return triple_from_json(_read_json(expr), alg)
    raise InputError(f"cannot parse triple {expr!r}")


# diagrams ------------------------------------------------------------------


def diagram_from_json(obj: dict, alg) -> pex.PExDiagram:
    """Accepts a bare diagram or a ``pex build`` report wrapping one under ``diagram``."""
    obj = obj.get("diagram", obj)
    objects = {e: rep_from_json(obj["objects"][e], alg) for e in pex.OBJECTS}
    maps = {}
    for name, (s, t) in pex.ARROWS.items():
        mats = obj["maps"].get(name, {})
        maps[name] = Morphism(objects[s], objects[t], {v: np.array(m, dtype=np.int64) for v, m in mats.items()})
    return pex.PExDiagram(objects, maps)


def load_diagram(path: str, alg) -> pex.PExDiagram:
    return diagram_from_json(_read_json(path), alg)


# workspace -----------------------------------------------------------------


@dataclass
class Workspace:
    """Root directory, global configuration and an optional registry file."""

    root: Path
    config: dict = field(default_factory=dict)
    registry: Path | None = None

    def path(self, name: str) -> Path:
        p = Path(name)
        return p if p.is_absolute() else self.root / p

    def index(self) -> dict:
        """JSON files under the root grouped by their apparent kind."""
        out: dict = {"algebras": [], "modules": [], "triples": [], "diagrams": [], "other": []}
        for f in sorted(self.root.rglob("*.json")):
            try:
                obj = _read_json(f)
            except InputError:
                continue
            kind = ("diagrams" if "objects" in obj else "triples" if "A" in obj and "B" in obj
                    else "algebras" if "vertices" in obj or "T" in obj else "modules" if "dims" in obj else "other")
            out[kind].append(str(f.relative_to(self.root)))
        return out
