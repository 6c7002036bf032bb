"""Exact linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays holding residues in ``[0, p)``;
the array-level functions below take the characteristic explicitly.
:class:`FpMatrix` is an immutable carrier used at API and file boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_CHAR = 5
_MAX_CHAR = 2**31


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_char(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)) or p >= _MAX_CHAR:
        raise ValueError(f"characteristic must be a prime below 2**31, got {p!r}")
    return int(p)


def asmat(a, p: int, shape=None) -> np.ndarray:
    m = np.array(a, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m % p


def zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    if p < 3_000_000:
        return (a @ b) % p
    # avoid int64 overflow in the accumulated dot products
    return np.array((a.astype(object) @ b.astype(object)) % p, dtype=np.int64)


def inverse_scalar(x: int, p: int) -> int:
    return pow(int(x) % p, -1, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns of ``a`` mod ``p``."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * inverse_scalar(m[r, c], p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, r, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return rref(a, p)[1]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of ``{x : a x = 0}``."""
    rows, cols = a.shape
    if cols == 0:
        return zeros(0, 0)
    m, r, pivots = rref(a, p)
    piv = set(pivots)
    free = [c for c in range(cols) if c not in piv]
    k = zeros(cols, len(free))
    k[free, np.arange(len(free))] = 1
    if pivots and free:
        k[np.ix_(pivots, range(len(free)))] = (-m[: len(pivots)][:, free]) % p
    return k


def colspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the column space of ``a`` (in rref coordinates)."""
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return zeros(rows, 0)
    m, r, _ = rref(a.T, p)
    return np.ascontiguousarray(m[:r].T)


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Some ``x`` with ``a x = b``, or ``None`` when ``b`` is outside the image."""
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"row counts differ: {a.shape} vs {b.shape}")
    n = a.shape[1]
    if b.shape[1] == 0:
        return zeros(n, 0)
    if a.shape[0] == 0:
        return zeros(n, b.shape[1])
    aug = np.hstack([a % p, b % p])
    m, r, pivots = rref(aug, p)
    if pivots and pivots[-1] >= n:
        return None
    x = zeros(n, b.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = m[i, n:]
    return x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("only square matrices are invertible")
    x = solve(a, eye(n), p)
    if x is None:
        raise ZeroDivisionError("matrix is singular")
    return x


def quotient_map(sub: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """For a subspace spanned by the columns of ``sub`` inside ``F^d``.

    Returns ``(q, s)`` with ``q`` surjective of kernel exactly the span and
    ``s`` a section, ``q @ s = 1``.
    """
    d = sub.shape[0]
    if sub.shape[1] == 0:
        return eye(d), eye(d)
    q = np.ascontiguousarray(nullspace(sub.T % p, p).T)
    s = solve(q, eye(q.shape[0]), p) if q.shape[0] else zeros(d, 0)
    return q, s


def complement_basis(sub: np.ndarray, d: int, p: int) -> np.ndarray:
    """Unit vectors extending the span of ``sub`` to all of ``F^d``."""
    _, r, pivots = rref(sub.T % p, p) if sub.shape[1] else (None, 0, [])
    # pivots of the row-reduced transpose mark coordinates already covered
    chosen = [c for c in range(d) if c not in set(pivots)]
    out = zeros(d, len(chosen))
    for j, c in enumerate(chosen):
        out[c, j] = 1
    return out


def block_diag(blocks: list[np.ndarray]) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i : i + b.shape[0], j : j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    result = eye(a.shape[0])
    base = a % p
    while k:
        if k & 1:
            result = mul(result, base, p)
        base = mul(base, base, p)
        k >>= 1
    return result


def int_rank(m) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    rows = [list(map(int, row)) for row in m]
    if not rows or not rows[0]:
        return 0
    n_rows, n_cols = len(rows), len(rows[0])
    r = 0
    prev = 1
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                num = rows[r][c] * rows[i][j] - rows[i][c] * rows[r][j]
                # exact division is the Bareiss invariant
                assert num % prev == 0
                rows[i][j] = num // prev
            rows[i][c] = 0
        prev = rows[r][c]
        r += 1
        if r == n_rows:
            break
    return r


def rational_rank(m) -> int:
    """Plain Gaussian elimination over ``Fraction``; used as a test oracle."""
    rows = [[Fraction(int(x)) for x in row] for row in m]
    if not rows or not rows[0]:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """An immutable matrix over GF(p)."""

    data: np.ndarray
    characteristic: int = DEFAULT_CHAR

    def __post_init__(self):
        p = check_char(self.characteristic)
        arr = asmat(self.data, p)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_rows(cls, rows, p: int = DEFAULT_CHAR, shape=None) -> "FpMatrix":
        if shape is not None:
            return cls(np.array(rows, dtype=np.int64).reshape(shape), p)
        return cls(np.array(rows, dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int = DEFAULT_CHAR) -> "FpMatrix":
        return cls(eye(n), p)

    @classmethod
    def zero(cls, r: int, c: int, p: int = DEFAULT_CHAR) -> "FpMatrix":
        return cls(zeros(r, c), p)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def p(self) -> int:
        return self.characteristic

    def _same(self, other: "FpMatrix"):
        if self.p != other.p:
            raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.p, self.data.shape, self.data.tobytes()))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._same(other)
        return FpMatrix(mul(self.data, other.data, self.p), self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._same(other)
        return FpMatrix(self.data + other.data, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._same(other)
        return FpMatrix(self.data - other.data, self.p)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.data.T, self.p)

    T = property(transpose)

    def rref(self) -> tuple["FpMatrix", int, list[int]]:
        m, r, piv = rref(self.data, self.p)
        return FpMatrix(m, self.p), r, piv

    def rank(self) -> int:
        return rank(self.data, self.p)

    def kernel_basis(self) -> "FpMatrix":
        k = nullspace(self.data, self.p)
        if self.cols == 0:
            k = zeros(0, 0)
        return FpMatrix(k, self.p)

    def solve(self, b: "FpMatrix") -> "FpMatrix | None":
        self._same(b)
        x = solve(self.data, b.data, self.p)
        return None if x is None else FpMatrix(x, self.p)

    def kronecker(self, other: "FpMatrix") -> "FpMatrix":
        self._same(other)
        return FpMatrix(np.kron(self.data, other.data), self.p)

    def direct_sum(self, other: "FpMatrix") -> "FpMatrix":
        self._same(other)
        return FpMatrix(block_diag([self.data, other.data]), self.p)

    def to_json(self) -> dict:
        return {"char": self.p, "rows": self.rows, "cols": self.cols, "entries": self.data.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "FpMatrix":
        p = obj["char"]
        rows, cols = obj.get("rows"), obj.get("cols")
        entries = obj["entries"]
        if rows is not None and cols is not None:
            arr = np.array(entries, dtype=np.int64).reshape(rows, cols)
        else:
            arr = np.array(entries, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= p):
            raise ValueError("matrix entries must be residues in [0, char)")
        return cls(arr, p)

    def __repr__(self):
        return f"FpMatrix({self.data.tolist()}, p={self.p})"


IntMatrix = list  # rows of Python ints; rank via int_rank


def kronecker(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    return a.kronecker(b)


def direct_sum(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    return a.direct_sum(b)


def kernel_basis(m: FpMatrix) -> FpMatrix:
    return m.kernel_basis()
