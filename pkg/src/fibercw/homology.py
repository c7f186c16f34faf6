"""Integral homology of presentation 2-complexes via Smith normal form.

All arithmetic uses Python integers, so there is no overflow to report.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation, euler_characteristic


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols_b = other.transpose().entries
        return IntegerMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols_b) for row in self.entries),
        )

    def transpose(self) -> "IntegerMatrix":
        cols = tuple(tuple(row[j] for row in self.entries) for j in range(self.cols))
        return IntegerMatrix(self.cols, self.rows, cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]


def determinant(m: IntegerMatrix) -> int:
    """Bareiss fraction-free elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(a: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D``, U and V unimodular.

    D is diagonal with nonnegative entries ``d1 | d2 | ...``.  Pivots are
    chosen as the entry of least absolute value in the remaining block.
    """
    m, n = a.rows, a.cols
    d = a.tolist()
    u = IntegerMatrix.identity(m).tolist()
    v = IntegerMatrix.identity(n).tolist()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    x = d[i][j]
                    if x and (pivot is None or abs(x) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]

    return (
        IntegerMatrix.from_rows(u, m),
        IntegerMatrix.from_rows(d, n),
        IntegerMatrix.from_rows(v, n),
    )


def invariant_factors(a: IntegerMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    return [x for x in smith_normal_form(a)[1].diagonal() if x]


def boundary2(p: Presentation) -> IntegerMatrix:
    """Abelianized 2-boundary: one row per relator, one column per generator."""
    return IntegerMatrix.from_rows([r.exponent_vector() for r in p.relators], len(p.alphabet))


@dataclass(frozen=True)
class HomologyProfile:
    """Homology of a connected one-vertex 2-complex.

    H2 of a 2-complex is a subgroup of the free 2-chains, hence free; no
    torsion is recorded for it.
    """

    betti: tuple[int, int, int]
    torsion_h1: tuple[int, ...]
    euler: int

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion_h1": list(self.torsion_h1), "euler": self.euler}


def homology_profile(p: Presentation) -> HomologyProfile:
    factors = invariant_factors(boundary2(p))
    rank = len(factors)
    return HomologyProfile(
        betti=(1, len(p.alphabet) - rank, len(p.relators) - rank),
        torsion_h1=tuple(f for f in factors if f > 1),
        euler=euler_characteristic(p),
    )
