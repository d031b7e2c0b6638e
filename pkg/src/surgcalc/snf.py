"""Integer linear algebra over Python ints.

Matrices are lists of rows.  A presentation matrix has one row per relation
and one column per generator; its cokernel ``Z^cols / rowspan`` is the group
it presents.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Sequence, Tuple

Matrix = List[List[int]]

__all__ = [
    "AbelianGroup",
    "smith_decomposition",
    "smith_normal_form",
    "solve_row_combination",
    "left_kernel",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free_rank + sum Z/t_i``."""

    free_rank: int
    torsion_invariants: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion_invariants)
        object.__setattr__(self, "torsion_invariants", t)
        if self.free_rank < 0:
            raise ValueError("free rank must be >= 0")
        for x in t:
            if x < 2:
                raise ValueError(f"torsion invariant {x} < 2")
        for x, y in zip(t, t[1:]):
            if y % x:
                raise ValueError(f"torsion invariants {t} do not form a divisibility chain")

    @property
    def torsion_order(self):
        n = 1
        for x in self.torsion_invariants:
            n *= x
        return n

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion_invariants]
        return " + ".join(parts) or "0"


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_decomposition(m: Sequence[Sequence[int]]):
    """Return ``(D, U, V)`` with ``U @ M @ V == D`` diagonal and U, V unimodular.

    The diagonal entries are non-negative and each divides the next.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row[dst] += k * row[src]
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            # pivot: smallest non-zero entry of the remaining block
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = a[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return a, u, v
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # the pivot must divide the rest of the block
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def smith_normal_form(m: Sequence[Sequence[int]], generators: int | None = None) -> AbelianGroup:
    """Cokernel of the relation matrix ``m`` (rows are relations).

    ``generators`` is needed only when ``m`` has no rows.
    """
    if not m:
        return AbelianGroup(generators or 0)
    cols = len(m[0])
    d, _, _ = smith_decomposition(m)
    diag = [d[i][i] for i in range(min(len(d), cols))]
    nonzero = [x for x in diag if x]
    return AbelianGroup(cols - len(nonzero), tuple(x for x in nonzero if x > 1))


def solve_row_combination(m: Sequence[Sequence[int]], b: Sequence[int]):
    """Integer vector ``x`` with ``x @ m == b``, or ``None`` if there is none."""
    rows = len(m)
    if rows == 0:
        return [] if not any(b) else None
    cols = len(m[0])
    d, u, v = smith_decomposition(m)
    # x m = b  <=>  y D = b V  with  x = y U
    c = [sum(b[k] * v[k][j] for k in range(cols)) for j in range(cols)]
    y = [0] * rows
    for j in range(cols):
        dj = d[j][j] if j < rows else 0
        if dj == 0:
            if c[j]:
                return None
        else:
            if c[j] % dj:
                return None
            y[j] = c[j] // dj
    return [sum(y[i] * u[i][k] for i in range(rows)) for k in range(rows)]


def left_kernel(m: Sequence[Sequence[int]]) -> Matrix:
    """Basis (as rows) of the lattice ``{x : x @ m == 0}``."""
    rows = len(m)
    if rows == 0:
        return []
    d, u, _ = smith_decomposition(m)
    rank = sum(1 for i in range(min(rows, len(d[0]) if d else 0)) if d[i][i])
    return [list(u[i]) for i in range(rank, rows)]


def primitive(vec: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for x in vec:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in vec)
