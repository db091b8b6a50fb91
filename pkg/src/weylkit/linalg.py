"""Exact linear algebra over the rationals.

Matrices are numpy object arrays filled with ``fractions.Fraction``; numpy
supplies shape bookkeeping and matmul dispatch while all arithmetic stays
exact.  Everything downstream (bracket tables, module construction, rank
certificates) runs through the small kernel here, so these routines favor
clarity over asymptotic cleverness; at rank <= 3 the matrices are tiny.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

F0 = Fraction(0)
F1 = Fraction(1)


def fr(x) -> Fraction:
    """Coerce ints/strings/Fractions to Fraction (floats are rejected:

    exactness is the point)."""
    if isinstance(x, float):
        raise TypeError("refusing to coerce float to Fraction")
    return Fraction(x)


def fmat(rows: Sequence[Sequence]) -> np.ndarray:
    a = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            a[i, j] = fr(x)
    return a


def fvec(entries: Iterable) -> np.ndarray:
    xs = [fr(x) for x in entries]
    a = np.empty(len(xs), dtype=object)
    for i, x in enumerate(xs):
        a[i] = x
    return a


def zeros(n: int, m: int | None = None) -> np.ndarray:
    if m is None:
        a = np.empty(n, dtype=object)
        a[:] = F0
        return a
    a = np.empty((n, m), dtype=object)
    a[:, :] = F0
    return a


def eye(n: int) -> np.ndarray:
    a = zeros(n, n)
    for i in range(n):
        a[i, i] = F1
    return a


def is_zero(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.flat)


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (R, pivot column indices)."""
    r = a.copy()
    n, m = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(m):
        piv = next((i for i in range(row, n) if r[i, col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = r[row] / r[row, col]
        for i in range(n):
            if i != row and r[i, col] != 0:
                r[i] = r[i] - r[i, col] * r[row]
        pivots.append(col)
        row += 1
        if row == n:
            break
    return r, pivots


def rank(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def nullspace(a: np.ndarray) -> list[np.ndarray]:
    """Basis of {x : a @ x = 0}, one vector per free column."""
    n, m = a.shape
    r, pivots = rref(a)
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for j in free:
        v = zeros(m)
        v[j] = F1
        for i, p in enumerate(pivots):
            v[p] = -r[i, j]
        basis.append(v)
    return basis


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution of a @ x = b, or None if inconsistent."""
    n, m = a.shape
    aug = zeros(n, m + 1)
    aug[:, :m] = a
    aug[:, m] = b
    r, pivots = rref(aug)
    if m in pivots:
        return None
    x = zeros(m)
    for i, p in enumerate(pivots):
        x[p] = r[i, m]
    return x


def column_stack(vecs: Sequence[np.ndarray]) -> np.ndarray:
    if not vecs:
        return zeros(0, 0)
    a = zeros(len(vecs[0]), len(vecs))
    for j, v in enumerate(vecs):
        a[:, j] = v
    return a


class SpanBasis:
    """Incremental echelonized span with expansion bookkeeping.

    ``add`` keeps, for every retained vector, its expression in terms of the
    raw vectors fed in so far; ``express`` then rewrites any member of the
    span in those raw coordinates.  Used by the module builder to name basis
    vectors by the lowering words that produced them.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[np.ndarray] = []          # echelonized copies
        self.combos: list[np.ndarray] = []        # rows[i] = sum combos[i][k] * raw[k]
        self.pivots: list[int] = []
        self.n_raw = 0

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, v: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        v = v.copy()
        c = c.copy()
        for i, p in enumerate(self.pivots):
            if v[p] != 0:
                coef = v[p]
                v = v - coef * self.rows[i]
                c = c - coef * self._combo_padded(i, len(c))
        return v, c

    def _combo_padded(self, i: int, width: int) -> np.ndarray:
        c = self.combos[i]
        if len(c) == width:
            return c
        out = zeros(width)
        out[: len(c)] = c
        return out

    def add(self, v: np.ndarray) -> bool:
        """Returns True iff v enlarged the span."""
        self.n_raw += 1
        c = zeros(self.n_raw)
        c[self.n_raw - 1] = F1
        v2, c2 = self._reduce(v, c)
        piv = next((j for j in range(self.dim) if v2[j] != 0), None)
        if piv is None:
            return False
        scale = v2[piv]
        v2 = v2 / scale
        c2 = c2 / scale
        # back-substitute to keep rows fully reduced
        for i in range(len(self.rows)):
            if self.rows[i][piv] != 0:
                coef = self.rows[i][piv]
                self.rows[i] = self.rows[i] - coef * v2
                self.combos[i] = self._combo_padded(i, self.n_raw) - coef * c2
        self.rows.append(v2)
        self.combos.append(c2)
        self.pivots.append(piv)
        return True

    def contains(self, v: np.ndarray) -> bool:
        v2 = v.copy()
        for i, p in enumerate(self.pivots):
            if v2[p] != 0:
                v2 = v2 - v2[p] * self.rows[i]
        return is_zero(v2)

    def express(self, v: np.ndarray) -> np.ndarray | None:
        """Coordinates of v over the raw vectors, or None if v not in span."""
        v2 = v.copy()
        out = zeros(self.n_raw)
        for i, p in enumerate(self.pivots):
            if v2[p] != 0:
                coef = v2[p]
                v2 = v2 - coef * self.rows[i]
                out = out + coef * self._combo_padded(i, self.n_raw)
        if not is_zero(v2):
            return None
        return out
