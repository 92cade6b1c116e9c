"""Exact integer matrix representations of presentations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..presentation import Presentation
from ..words import Word, letter_generator
from .smith import IntegerMatrix, determinant, identity, matmul


def integer_inverse(m: Sequence[Sequence[int]]) -> IntegerMatrix:
    """Inverse of a unimodular integer matrix (Gauss-Jordan over the rationals)."""
    n = len(m)
    if determinant(m) not in (1, -1):
        raise ValueError("matrix is not invertible over the integers")
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[x for x in row[n:]] for row in a]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


@dataclass(frozen=True)
class MatrixAssignment:
    """Generator name -> square integer matrix with determinant +-1."""

    matrices: Mapping[str, tuple[tuple[int, ...], ...]]

    def __post_init__(self):
        mats = {name: tuple(tuple(int(x) for x in row) for row in m) for name, m in self.matrices.items()}
        dims = {len(m) for m in mats.values()}
        if len(dims) > 1:
            raise ValueError(f"matrices have different sizes {sorted(dims)}")
        for name, m in mats.items():
            if any(len(row) != len(m) for row in m):
                raise ValueError(f"matrix for {name!r} is not square")
            if determinant(m) not in (1, -1):
                raise ValueError(f"matrix for {name!r} has determinant {determinant(m)}, need +-1")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "_inverses", {n: integer_inverse(m) for n, m in mats.items()})

    @property
    def dim(self) -> int:
        return len(next(iter(self.matrices.values())))

    def image(self, name: str, sign: int = 1) -> IntegerMatrix:
        return [list(r) for r in self.matrices[name]] if sign == 1 else self._inverses[name]

    def to_json(self) -> dict:
        return {n: [list(r) for r in m] for n, m in self.matrices.items()}


def evaluate_word(asg: MatrixAssignment, w: Word) -> IntegerMatrix:
    result = identity(asg.dim)
    for x in w.letters:
        name = w.alphabet.names[letter_generator(x)]
        result = matmul(result, asg.image(name, 1 if x > 0 else -1))
    return result


def check_homomorphism(p: Presentation, asg: MatrixAssignment) -> bool:
    """True iff every relator of ``p`` evaluates to the identity."""
    missing = set(p.alphabet.names) - set(asg.matrices)
    if missing:
        raise ValueError(f"no matrix for generators {sorted(missing)}")
    ident = identity(asg.dim)
    return all(evaluate_word(asg, r) == ident for r in p.relators)
