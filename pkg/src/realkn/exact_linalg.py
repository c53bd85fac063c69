"""Exact integer and GF(2) linear algebra.

Integer matrices are small (rank <= 4 in practice) and stored as tuples of
Python ints.  Every arithmetic result is checked against the signed 64-bit
range and raises :class:`IntegerOverflow` instead of silently growing or
wrapping.  Vectors are row vectors: a covector ``lam`` acts on a matrix by
``vec_mat(lam, A)``, i.e. ``lam . A``.

GF(2) helpers work on numpy ``uint8`` arrays internally and hand back tuples
of 0/1 so that fiber points can be used as dictionary keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import gcd
from operator import mul
from typing import Iterable, Sequence

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

IntVector = tuple[int, ...]
GF2Vector = tuple[int, ...]


class LinalgError(ValueError):
    """Base class for errors raised by this module."""


class DimensionMismatch(LinalgError):
    pass


class IntegerOverflow(LinalgError, OverflowError):
    pass


class NotUnimodular(LinalgError):
    pass


class NoSolution(LinalgError):
    pass


def checked(x: int) -> int:
    if x < INT64_MIN or x > INT64_MAX:
        raise IntegerOverflow(f"integer {x} outside the signed 64-bit range")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(checked(int(x)) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __iter__(self):
        return iter(self.entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(
            tuple(
                tuple(checked(a + b) for a, b in zip(r, s))
                for r, s in zip(self.entries, other.entries)
            )
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(checked(c * a) for a in r) for r in self.entries))

    @cached_property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns)

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def det(self) -> int:
        return determinant(self)

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and self.det() in (1, -1)

    def trace(self) -> int:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        return checked(sum(self.entries[i][i] for i in range(self.rows)))

    def mod2(self) -> np.ndarray:
        return (np.array(self.entries, dtype=np.int64) % 2).astype(np.uint8)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def _trusted(rows: tuple[tuple[int, ...], ...]) -> IntMatrix:
    """Wrap rows already known to be rectangular, non-empty and in range."""
    m = object.__new__(IntMatrix)
    object.__setattr__(m, "entries", rows)
    return m


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Exact product ``a @ b``."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    bt = b.columns
    rows = tuple(tuple(sum(map(mul, row, col)) for col in bt) for row in a.entries)
    for row in rows:
        for x in row:
            checked(x)
    return _trusted(rows)


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    """``a**k`` by repeated squaring; negative ``k`` needs a unimodular ``a``."""
    if a.rows != a.cols:
        raise DimensionMismatch("power of a non-square matrix")
    if k < 0:
        return mat_pow(unimodular_inverse(a), -k)
    result = IntMatrix.identity(a.rows)
    base = a
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def vec_mat(v: Sequence[int], a: IntMatrix) -> IntVector:
    """Row vector times matrix."""
    if len(v) != a.rows:
        raise DimensionMismatch(f"vector of length {len(v)} against {a.shape} matrix")
    return tuple(checked(sum(map(mul, v, col))) for col in a.columns)


def mat_vec(a: IntMatrix, v: Sequence[int]) -> IntVector:
    """Matrix times column vector."""
    if len(v) != a.cols:
        raise DimensionMismatch(f"{a.shape} matrix against vector of length {len(v)}")
    return tuple(checked(sum(x * y for x, y in zip(row, v))) for row in a.entries)


def vec_add(u: Sequence[int], v: Sequence[int]) -> IntVector:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return tuple(checked(x + y) for x, y in zip(u, v))


def vec_neg(v: Sequence[int]) -> IntVector:
    return tuple(checked(-x) for x in v)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return checked(sum(x * y for x, y in zip(u, v)))


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def determinant(a: IntMatrix) -> int:
    """Bareiss fraction-free elimination; exact for integer input."""
    n = a.rows
    if n != a.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    m = [list(r) for r in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return checked(sign * m[n - 1][n - 1])


def unimodular_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    if a.rows != a.cols:
        raise NotUnimodular("non-square matrix has no inverse")
    d = determinant(a)
    if d not in (1, -1):
        raise NotUnimodular(f"determinant {d} is not +-1")
    n = a.rows
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(a.entries)
    ]
    _rref(aug, n)
    inv = []
    for row in aug:
        out = []
        for x in row[n:]:
            assert x.denominator == 1
            out.append(int(x))
        inv.append(tuple(out))
    return IntMatrix(tuple(inv))


# --- rational helpers -------------------------------------------------------


def _rref(m: list[list[Fraction]], ncols: int | None = None) -> list[int]:
    """In-place reduced row echelon form over Q; returns pivot columns."""
    if not m:
        return []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return pivots


def rank(rows: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    """Rank over Q of a list of integer row vectors."""
    if not rows:
        return 0
    m = [[Fraction(x) for x in r] for r in rows]
    return len(_rref(m, ncols))


def integer_nullspace(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Primitive integer basis (over Q) of ``{x : r . x = 0 for every row r}``."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = _rref(m, ncols) if m else []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -m[i][f]
        lcm = 1
        for v in x:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        basis.append(primitive([int(v * lcm) for v in x]))
    return basis


def gcd_of_maximal_minors(rows: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a k x n integer matrix (0 if rank < k).

    The rows extend to a lattice basis of Z^n exactly when this is 1.
    """
    from itertools import combinations

    k = len(rows)
    if k == 0:
        return 1
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        sub = IntMatrix(tuple(tuple(r[c] for c in cols) for r in rows))
        g = gcd(g, determinant(sub))
    return abs(g)


# --- GF(2) -------------------------------------------------------------------


def gf2(a) -> np.ndarray:
    """Reduce integer data mod 2 into a uint8 array."""
    return (np.asarray(a, dtype=np.int64) % 2).astype(np.uint8)


def gf2_rref(a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2) and its pivot columns."""
    m = gf2(a).copy()
    if m.ndim != 2:
        raise DimensionMismatch("expected a 2-d array")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] ^= m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def gf2_rank(a) -> int:
    a = np.atleast_2d(gf2(a))
    if a.size == 0:
        return 0
    return len(gf2_rref(a)[1])


def gf2_nullspace(a, ncols: int | None = None) -> list[GF2Vector]:
    """Basis of ``{x : a x = 0}`` over GF(2)."""
    a = gf2(a)
    if a.ndim != 2:
        raise DimensionMismatch("expected a 2-d array")
    ncols = a.shape[1] if ncols is None else ncols
    if a.shape[0] == 0:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    m, pivots = gf2_rref(a)
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        x = np.zeros(ncols, dtype=np.uint8)
        x[f] = 1
        for i, p in enumerate(pivots):
            x[p] = m[i, f]
        basis.append(tuple(int(v) for v in x))
    return basis


@dataclass(frozen=True)
class GF2Solution:
    solution: GF2Vector
    nullspace_basis: tuple[GF2Vector, ...]


def gf2_solve(a, b) -> GF2Solution:
    """Solve ``a x = b`` over GF(2).

    Returns one particular solution and a basis of ``ker a``; raises
    :class:`NoSolution` for an inconsistent system.
    """
    a = gf2(a)
    b = gf2(b).reshape(-1)
    if a.ndim != 2:
        raise DimensionMismatch("expected a 2-d coefficient matrix")
    rows, cols = a.shape
    if rows != b.shape[0]:
        raise DimensionMismatch(f"{rows} equations but right-hand side of length {b.shape[0]}")
    if rows == 0:
        zero = (0,) * cols
        return GF2Solution(zero, tuple(gf2_nullspace(np.zeros((0, cols), np.uint8), cols)))
    aug, pivots = gf2_rref(np.concatenate([a, b[:, None]], axis=1))
    if cols in pivots:
        raise NoSolution("inconsistent GF(2) system")
    x = np.zeros(cols, dtype=np.uint8)
    for i, p in enumerate(pivots):
        x[p] = aug[i, cols]
    return GF2Solution(tuple(int(v) for v in x), tuple(gf2_nullspace(a, cols)))


def gf2_in_span(v, basis) -> bool:
    if len(basis) == 0:
        return not np.any(gf2(v))
    return gf2_rank(list(basis)) == gf2_rank(list(basis) + [list(v)])


def gf2_vec_mat(v: Sequence[int], a: IntMatrix) -> GF2Vector:
    """Row vector times matrix, reduced mod 2."""
    return tuple(x % 2 for x in vec_mat(v, a))
