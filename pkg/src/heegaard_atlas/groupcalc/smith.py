"""Smith normal form over the integers and first homology of a presentation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..presentation import Presentation
from ..words import exponent_sum

IntegerMatrix = list[list[int]]


def identity(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntegerMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
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
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(d, U, V)`` with ``U @ m @ V`` diagonal, diagonal ``d`` and ``d[i] | d[i+1]``.

    ``U`` and ``V`` are unimodular.  ``ncols`` gives the width when ``m`` has no rows.
    Pivot choice: the smallest nonzero absolute value, first in row-major order.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    U, V = identity(rows), identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (a, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (a, U):
            rs, rd = M[src], M[dst]
            for k in range(len(rd)):
                rd[k] += q * rs[k]

    def add_col(dst, src, q):
        for M in (a, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    d = [a[i][i] for i in range(min(rows, cols))]
    return d, U, V


@dataclass(frozen=True)
class AbelianGroup:
    rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        if any(x < 2 for x in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} must be a divisibility chain of integers >= 2")
        object.__setattr__(self, "torsion", t)

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{n}" for n in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> AbelianGroup:
        return cls(int(data["rank"]), tuple(data.get("torsion", ())))


def exponent_matrix(p: Presentation) -> IntegerMatrix:
    """Relator-by-generator matrix of exponent sums."""
    return [[exponent_sum(r, g) for g in range(p.alphabet.size)] for r in p.relators]


def homology_h1(p: Presentation) -> AbelianGroup:
    m = exponent_matrix(p)
    d, _, _ = smith_normal_form(m, ncols=p.alphabet.size)
    nonzero = [x for x in d if x]
    return AbelianGroup(p.alphabet.size - len(nonzero), tuple(x for x in nonzero if x > 1))
